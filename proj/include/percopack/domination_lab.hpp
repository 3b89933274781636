#pragma once

#include "percopack/geometry.hpp"
#include "percopack/pointproc.hpp"

#include <cstdint>
#include <vector>

namespace percopack {

// Hexagon size delta*sqrt(t), time t and site probability p. C is fixed by
// delta; mu is filled in from the well-behaved probability.
struct DominationParams {
  double delta = 0.1;
  double t = 1.0;
  double p = 0.5;
  double C = 0.0;
  double mu = 0.0;

  DominationParams() : DominationParams(0.1, 1.0) {}
  DominationParams(double delta, double t, double p = 0.5);

  double cell_side() const;
};

/// 4 * delta^(-3/2).
double neighborhood_constant(double delta);

/// Cells j (as axial offsets from i) with sup_{x in Q_i, y in Q_j} |x - y|
/// <= C delta sqrt(t). Distances are compared exactly in lattice units, so the
/// set depends on delta only.
std::vector<HexCell> build_J(double delta);

/// Hexagon-to-hexagon kernel phi_t(i, .) on J_i.
class HexKernel {
public:
  explicit HexKernel(const DominationParams& params);

  double side() const { return side_; }
  double t() const { return t_; }
  const std::vector<HexCell>& cells() const { return cells_; }
  const std::vector<double>& values() const { return values_; }
  /// M = sum_j phi_t(i, j).
  double normalizer() const { return normalizer_; }
  /// phi_t(i, i + offset); zero outside J_i.
  double phi(const HexCell& offset) const;
  /// Largest distance between the two cells, in the same units as side().
  double sup_distance(const HexCell& offset) const;

private:
  double side_;
  double t_;
  std::vector<HexCell> cells_;
  std::vector<double> values_;
  double normalizer_ = 0.0;
};

/// Planar heat kernel with per-coordinate variance t.
double heat_kernel(double squared_distance, double t);

struct WellBehaved {
  double probability = 0.0;
  double mu = 0.0;
  std::size_t neighborhood_size = 0;
  double lower_bound = 0.0;  // 1 - 5 delta
  bool bound_holds = false;
};

/// sum_{j in J_i} (3 sqrt3 / 2) delta^2 t phi_t(i, j). Throws
/// std::runtime_error when the sum leaves (0, 1].
WellBehaved well_behaved_probability(const DominationParams& params);

struct MonteCarloCount {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double phat() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

/// Rejection coupling of the Brownian endpoint with the two-stage move: start
/// uniform in Q_i, draw the Gaussian endpoint y and accept with probability
/// phi_t(i, q(y)) / f_t(y - x). The acceptance rate estimates the
/// well-behaved probability.
MonteCarloCount well_behaved_monte_carlo(const DominationParams& params, std::size_t trials, std::uint64_t seed,
                                         unsigned workers = 1);

struct ResidualIntensity {
  Point x = Point::Zero();
  double lambda = 0.0;        // truncated sum plus tail bound
  double tail_bound = 0.0;
  double truncation_radius = 0.0;
  double mu = 0.0;
  std::size_t nodes = 0;
  double ratio = 0.0;  // lambda / sqrt(delta)
  double c = 0.0;
  bool within = false;  // lambda <= c sqrt(delta)
};

/// Lambda(x) = sum_v mu g_t(x, v) over lattice nodes within the truncation
/// radius, with the Gaussian tail beyond it bounded and added. Requires
/// mu <= 1 (std::domain_error) and truncation_radius >= 6 sqrt(t)
/// (std::invalid_argument). A negative residual density is a logic_error.
ResidualIntensity residual_intensity(const DominationParams& params, const Point& x, double truncation_radius,
                                     double c = 1.0);

struct ResidualSweepRow {
  double delta = 0.0;
  double mu = 0.0;
  double max_lambda = 0.0;
  double max_ratio = 0.0;
};

/// max over sample points x of Lambda(x) / sqrt(delta), per delta. Sample
/// points are uniform in the hexagon containing the origin.
std::vector<ResidualSweepRow> residual_sweep(const std::vector<double>& deltas, double t, std::size_t samples,
                                             std::uint64_t seed);

struct EmptyHexagon {
  std::size_t trials = 0;
  std::size_t empty = 0;
  double phat = 0.0;
  double reference = 0.0;  // exp(-(2/sqrt3) area)
  double sigma = 0.0;
  bool consistent = true;  // phat <= reference + 3 sigma
};

/// Frequency with which no perturbed lattice node lies in a hexagon of the
/// given side centered at `center`.
EmptyHexagon empty_hexagon_probability(double t, double side, std::size_t trials, std::uint64_t seed,
                                       unsigned workers = 1, const Point& center = Point::Zero());

struct PathLaw {
  int m = 1;
  double epsilon = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double phat = 0.0;
  double expected = 1.0;  // 1 / m!
  double sigma = 0.0;
};

/// Consecutive integers 1..m with displacements N(0, epsilon) conditioned on
/// |displacement| < 1/2; counts trials in which consecutive balls of radius
/// 1/2 still touch. Throws std::runtime_error after 1000 rejected draws for a
/// single node.
PathLaw path_law_1_over_m_factorial(int m, double epsilon, std::size_t trials, std::uint64_t seed,
                                    unsigned workers = 1);

struct EdgePreservation {
  std::vector<double> s_list;
  std::size_t trials = 0;
  std::size_t edges = 0;
  std::vector<std::size_t> preserved;   // per s
  std::vector<double> frequency;        // per s
  std::vector<std::vector<std::uint8_t>> per_trial;  // [trial][s]
  std::size_t pathwise_violations = 0;  // trials where the indicator rises with s
};

/// Frequency that every time-0 edge of V survives to time s, for each s. One
/// displacement per node is drawn at the largest s and scaled down, so each
/// trial is a single Brownian path observed at all times. Throws
/// std::invalid_argument when V's ball graph is disconnected or s_list is
/// not increasing.
EdgePreservation monotone_edge_preservation(const PointSet& V, const std::vector<double>& s_list,
                                            std::size_t trials, std::uint64_t seed);

/// Center plus its six lattice neighbours.
PointSet hexagonal_flower();
/// Two tangent balls.
PointSet tangent_pair();

struct RenormalizationSummary {
  double p = 0.0;
  std::size_t cells = 0;
  std::size_t open = 0;
  std::size_t largest = 0;
  double largest_fraction = 0.0;  // largest / cells
  bool spans = false;             // largest cluster meets the first and last column
};

/// Site field with parameter p over roughly cols x rows cells of side
/// cell_side, clustered under hexagon adjacency.
RenormalizationSummary renormalization_field_demo(double p, double cell_side, int cols, int rows,
                                                  std::uint64_t seed);

struct Figure2Outcome {
  double t = 0.0;
  std::size_t seeds = 0;
  std::size_t crossings = 0;
  bool majority = false;
};

/// Horizontal crossing of a window by the displaced periodic configuration,
/// sampled on the window padded by 6 sqrt(t) (rounded to whole tiles).
Figure2Outcome figure2_crossing(double t, double window_side, std::size_t seeds, std::uint64_t seed,
                                unsigned workers = 1);

}  // namespace percopack
