#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace percopack {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

using Point = Vector2<double>;

inline constexpr double kSqrt3 = 1.7320508075688772935;
inline constexpr double kPi = 3.14159265358979323846;

/// Squared Euclidean distance between two planar points.
template <typename DerivedA, typename DerivedB>
auto squared_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
  return (a - b).squaredNorm();
}

/// Relative slack on squared contact distances. Lattice coordinates carry
/// rounding of a few ulps, so tangent lattice balls would otherwise fall
/// apart at random; every contact test in the library goes through this.
inline constexpr double kContactSlack = 1e-12;

/// Squared reach d^2 widened by the contact slack.
inline constexpr double contact_reach2(double d) { return d * d * (1.0 + kContactSlack); }

/// Closed-ball adjacency: ||p - q|| <= 2r, up to the contact slack.
template <typename DerivedA, typename DerivedB>
bool balls_adjacent(const Eigen::MatrixBase<DerivedA>& p, const Eigen::MatrixBase<DerivedB>& q,
                    typename DerivedA::Scalar r)
{
  return squared_distance(p, q) <= contact_reach2(2 * r);
}

struct Segment {
  Point a;
  Point b;

  double length() const { return (b - a).norm(); }
};

/// Squared distance from c to the closed segment s.
template <typename Derived>
double squared_distance_to_segment(const Eigen::MatrixBase<Derived>& c, const Segment& s)
{
  const Point ab = s.b - s.a;
  const Point ac = c - s.a;
  const double len2 = ab.squaredNorm();
  double u = ac.dot(ab) / len2;
  if (u <= 0.0) return ac.squaredNorm();
  if (u >= 1.0) return (c - s.b).squaredNorm();
  return (ac - u * ab).squaredNorm();
}

template <typename Derived>
bool ball_intersects_segment(const Eigen::MatrixBase<Derived>& c, double r, const Segment& s)
{
  return squared_distance_to_segment(c, s) <= contact_reach2(r);
}

// Axis-aligned box. Lattice enumeration treats it as half-open on the max
// edges; membership queries treat it as closed.
struct AABB {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;

  AABB() = default;
  AABB(double x0, double x1, double y0, double y1);

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(const Point& p) const
  {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
  AABB padded(double margin) const { return {xmin - margin, xmax + margin, ymin - margin, ymax + margin}; }

  Segment left() const { return {{xmin, ymin}, {xmin, ymax}}; }
  Segment right() const { return {{xmax, ymin}, {xmax, ymax}}; }
  Segment bottom() const { return {{xmin, ymin}, {xmax, ymin}}; }
  Segment top() const { return {{xmin, ymax}, {xmax, ymax}}; }
};

// Regular hexagon with two horizontal edges ("flat-top"). Vertices are
// numbered counterclockwise starting from the rightmost one; edge k joins
// vertex k and vertex k+1, so edge 1 is the top edge and edge 4 the bottom.
struct Hexagon {
  Point center = Point::Zero();
  double side = 1.0;

  double apothem() const { return side * kSqrt3 / 2.0; }
  double area() const { return 1.5 * kSqrt3 * side * side; }
  Point vertex(int k) const;
  std::array<Point, 6> vertices() const;
  Segment edge(int k) const;
  bool contains(const Point& p) const;
  AABB bounding_box() const;
};

struct HexUnion {
  std::vector<Hexagon> cells;  // assumed interior-disjoint

  bool contains(const Point& p) const;
  double area() const;
  AABB bounding_box() const;
};

/// Closed planar region used for restriction, sampling and enumeration.
using Region = std::variant<AABB, Hexagon, HexUnion>;

bool point_in_region(const Point& p, const Region& region);
double region_area(const Region& region);
AABB region_bounding_box(const Region& region);

/// Axial cell index of a hexagonal tessellation.
struct HexCell {
  int q = 0;
  int r = 0;

  friend bool operator==(const HexCell&, const HexCell&) = default;
  friend auto operator<=>(const HexCell&, const HexCell&) = default;
};

// The six axial neighbor offsets, counterclockwise from the upper-right cell.
inline constexpr std::array<HexCell, 6> kHexNeighbors{
    {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

// Flat-top tessellation by hexagons of a given side. The default anchor puts
// an edge between (1/2, -sqrt3/4) and (side + 1/2, -sqrt3/4); cell (0,0) sits
// directly above that edge and cell (0,-1) directly below it.
class HexTessellation {
public:
  explicit HexTessellation(double side);
  HexTessellation(double side, const Point& anchor_left);

  double side() const { return side_; }
  Segment anchor() const;
  Point center(const HexCell& c) const;
  Hexagon cell(const HexCell& c) const { return {center(c), side_}; }
  HexCell locate(const Point& p) const;

private:
  double side_;
  Point origin_;  // center of cell (0,0)
};

std::vector<Point> tri_lattice_points(const AABB& region);
std::vector<Point> square_lattice_points(const AABB& region);

// Integer coordinates (i, j) of a triangular lattice node i*(1,0) + j*(1/2, sqrt3/2).
struct LatticeIndex {
  int i = 0;
  int j = 0;
};

inline Point tri_lattice_node(const LatticeIndex& k)
{
  return {k.i + 0.5 * k.j, k.j * (kSqrt3 / 2.0)};
}

/// Triangular-lattice nodes inside a closed region, sorted by (y, x), with
/// their integer indices.
std::vector<LatticeIndex> tri_lattice_indices_in(const Region& region);

enum class PairEdge { e, e1, e2, e3, e4, e5, e1p, e2p, e3p, e4p, e5p };

std::string_view to_string(PairEdge label);

struct HexPair {
  Hexagon h1;
  Hexagon h2;
  HexCell cell1;
  HexCell cell2;
  // Indexed by PairEdge.
  std::array<Segment, 11> edges;

  const Segment& edge(PairEdge label) const { return edges[static_cast<std::size_t>(label)]; }
  HexUnion as_union() const { return {{h1, h2}}; }
};

/// Two cells sharing an edge, labeled clockwise from the shared edge in each
/// hexagon. Throws if the cells are not adjacent.
HexPair hex_pair(const HexTessellation& tess, const HexCell& first, const HexCell& second);

/// The pair straddling the anchor edge of the default tessellation.
HexPair hex_pair(double side);

}  // namespace percopack
