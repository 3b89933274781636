#pragma once

#include "percopack/geometry.hpp"
#include "percopack/pointproc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace percopack {

/// Union-find with path halving and union by size.
class DisjointSets {
public:
  explicit DisjointSets(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n)
  {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    size_.assign(n, 1);
    components_ = n;
  }

  std::uint32_t find(std::uint32_t x)
  {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns the surviving root.
  std::uint32_t unite(std::uint32_t a, std::uint32_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return a;
  }

  bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
  std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }
  std::size_t component_count() const { return components_; }
  std::size_t size() const { return parent_.size(); }
  std::uint32_t push_back()
  {
    const auto id = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(id);
    size_.push_back(1);
    ++components_;
    return id;
  }

private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t components_ = 0;
};

// Uniform bucket grid over a static point set (counting sort by cell). Any
// cell side >= the query distance finds every pair within that distance by
// scanning the 3x3 block of cells around a point.
class SpatialGrid {
public:
  SpatialGrid(std::span<const Point> points, double cell_side);

  double cell_side() const { return cell_; }

  /// Calls fn(i, j) once for each unordered pair i < j with ||p_i - p_j|| <= max_dist
  /// (up to the contact slack).
  template <typename Fn>
  void for_each_close_pair(double max_dist, Fn&& fn) const
  {
    const double d2 = contact_reach2(max_dist);
    for (std::uint32_t i = 0; i < points_.size(); ++i) {
      const int cx = cx_[i];
      const int cy = cy_[i];
      for (int dy = -1; dy <= 1; ++dy) {
        const int y = cy + dy;
        if (y < 0 || y >= ny_) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int x = cx + dx;
          if (x < 0 || x >= nx_) continue;
          const std::size_t c = static_cast<std::size_t>(y) * nx_ + x;
          for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) {
            const std::uint32_t j = order_[k];
            if (j <= i) continue;
            if ((points_[i] - points_[j]).squaredNorm() <= d2) fn(i, j);
          }
        }
      }
    }
  }

private:
  std::span<const Point> points_;
  double cell_ = 1.0;
  double x0_ = 0.0;
  double y0_ = 0.0;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<int> cx_, cy_;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> order_;
};

// Ball intersection graph of a point set: nodes adjacent iff their distance
// is at most twice the radius. Components are kept in a disjoint-set forest.
class IntersectionGraph {
public:
  IntersectionGraph() = default;

  /// cell_side <= 0 selects 2*radius.
  IntersectionGraph(std::vector<Point> points, double radius, double cell_side = 0.0)
      : IntersectionGraph(std::move(points), radius, cell_side, [](std::uint32_t, std::uint32_t) { return true; })
  {
  }

  /// Keeps only adjacent pairs accepted by edge_filter(i, j).
  template <typename EdgeFilter>
  IntersectionGraph(std::vector<Point> points, double radius, double cell_side, EdgeFilter&& edge_filter)
      : points_(std::move(points)), radius_(radius), sets_(points_.size())
  {
    if (!(radius > 0.0)) throw std::invalid_argument("IntersectionGraph: radius must be positive");
    const double side = cell_side > 0.0 ? cell_side : 2.0 * radius * (1.0 + 1e-9);
    if (side < 2.0 * radius) throw std::invalid_argument("IntersectionGraph: grid cell side below 2r");
    if (points_.empty()) return;
    const SpatialGrid grid(points_, side);
    grid.for_each_close_pair(2.0 * radius, [&](std::uint32_t i, std::uint32_t j) {
      if (edge_filter(i, j)) sets_.unite(i, j);
    });
  }

  std::size_t size() const { return points_.size(); }
  double radius() const { return radius_; }
  const std::vector<Point>& points() const { return points_; }
  std::uint32_t find(std::uint32_t i) { return sets_.find(i); }
  bool same(std::uint32_t i, std::uint32_t j) { return sets_.same(i, j); }
  std::size_t component_count() const { return sets_.component_count(); }

  /// Component label per node, numbered 0.. in order of first appearance.
  std::vector<std::uint32_t> component_labels();

private:
  std::vector<Point> points_;
  double radius_ = 0.5;
  DisjointSets sets_;
};

IntersectionGraph build_graph(const PointSet& points, double cell_side = 0.0);

/// True iff some component of g has a node whose ball meets a segment of
/// `from` and a node whose ball meets a segment of `to`.
bool connects(IntersectionGraph& g, std::span<const Segment> from, std::span<const Segment> to);

/// Path of radius-r balls from X1 to X2 using only nodes inside the closed
/// region X3. A single ball meeting both sides counts.
bool crossing(const PointSet& points, std::span<const Segment> x1, std::span<const Segment> x2, const Region& x3);

enum class Direction { horizontal, vertical };

bool box_crossing(const PointSet& points, const AABB& box, Direction direction);

struct ClusterStats {
  std::vector<std::size_t> sizes;  // descending
  double largest_diameter = 0.0;
  std::size_t component_count = 0;
};

/// Components of the graph restricted to nodes inside `region`; diameter is
/// the largest center-to-center distance within a component.
ClusterStats component_stats(const IntersectionGraph& graph, const Region& region);

/// Exact diameter of a planar point set: all pairs up to kDiameterBruteForce
/// points, rotating calipers on the convex hull above that.
inline constexpr std::size_t kDiameterBruteForce = 4096;
double point_diameter(std::span<const Point> points);
std::vector<Point> convex_hull(std::vector<Point> points);

/// Smallest radius r <= r_max at which balls centered at the nodes inside
/// `box` cross it in `direction`; +infinity if none. Exact threshold of the
/// monotone map r -> box_crossing.
double critical_crossing_radius(std::span<const Point> points, const AABB& box, Direction direction, double r_max);

// Online crossing detector: balls of a fixed radius are inserted one at a
// time into a box; reports the first insertion that completes a crossing.
class IncrementalCrossing {
public:
  IncrementalCrossing(const AABB& box, double radius, Direction direction);

  /// Points outside the box are ignored. Returns true once crossed.
  bool insert(const Point& p);
  bool crossed() const { return crossed_; }
  std::size_t inserted() const { return points_.size(); }

private:
  AABB box_;
  double radius_;
  Direction direction_;
  double cell_;
  int nx_, ny_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<Point> points_;
  std::vector<std::uint8_t> flags_;  // per root: bit0 touches start side, bit1 end side
  DisjointSets sets_;
  bool crossed_ = false;
};

}  // namespace percopack
