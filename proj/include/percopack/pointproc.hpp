#pragma once

#include "percopack/geometry.hpp"
#include "percopack/rng.hpp"

#include <map>
#include <vector>

namespace percopack {

// Planar point configuration carrying ball radius and a time label.
// multiplicity[k] counts how many balls are superposed at points[k]; it is
// always the same length as points.
struct PointSet {
  std::vector<Point> points;
  std::vector<int> multiplicity;
  double radius = 0.5;
  double time_label = 0.0;

  PointSet() = default;
  explicit PointSet(std::vector<Point> pts, double r = 0.5, double t = 0.0);

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  long total_multiplicity() const;
  void push_back(const Point& p, int mult = 1);
  void validate() const;
};

/// Each ball moves by an independent planar Gaussian with per-coordinate
/// variance t. Superposed balls are expanded first (every ball moves on its
/// own), so the result has unit multiplicities. t == 0 returns the input.
PointSet brownian_displace(const PointSet& points, double t, RngStream& rng);

/// Homogeneous Poisson process of intensity lambda on a closed region.
PointSet sample_poisson_pp(const Region& region, double lambda, RngStream& rng, double radius = 0.5);

struct SiteCell {
  HexCell cell;
  bool open = false;
};

// Bernoulli(p) field over the cells of a hexagonal tessellation with side
// cell_side, restricted to cells whose centers lie in a window.
struct SiteField {
  double p = 0.0;
  double cell_side = 1.0;
  std::vector<SiteCell> cells;  // sorted by (q, r)

  std::size_t open_count() const;
  /// Index into cells, or -1 when the cell is outside the window.
  long find(const HexCell& c) const;
};

SiteField sample_site_field(double p, double cell_side, const AABB& window, RngStream& rng);

/// i.i.d. Poisson(mu) marks, one per point.
std::vector<long> poisson_marks(const PointSet& points, double mu, RngStream& rng);

/// Brownian scaling: sqrt(s / s_prime) times each displacement. Turns time-s'
/// displacements into time-s displacements sharing the same noise.
std::vector<Point> brownian_scaling_couple(const std::vector<Point>& displacements_at_sprime, double s,
                                           double s_prime);

/// Offsets inside one 6x6 tile of the non-monotone example: nine sites each
/// carrying 14 superposed balls and eighteen single balls linking them.
struct TileSite {
  double x;
  double y;
  int multiplicity;
};
extern const std::array<TileSite, 27> kFigure2Tile;
inline constexpr double kFigure2Period = 6.0;

/// Periodic superposed-ball configuration over a window aligned to the
/// period-6 tiling (corners on multiples of 6).
PointSet figure2_configuration(const AABB& window);

/// Perturbed triangular lattice: nodes of the lattice inside `window`
/// displaced for time t. Node displacements are keyed by lattice index.
PointSet perturbed_tri_lattice(const AABB& window, double t, const RngStream& rng, double radius = 0.5);

}  // namespace percopack
