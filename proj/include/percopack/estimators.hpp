#pragma once

#include "percopack/cluster.hpp"
#include "percopack/geometry.hpp"
#include "percopack/rng.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace percopack {

// ---------------------------------------------------------------------------
// Exact binomial inference

/// Regularized incomplete beta I_x(a, b), evaluated by the Lentz continued
/// fraction on whichever side of the mean converges fastest.
double incomplete_beta(double a, double b, double x);

/// x with I_x(a, b) = p, by bisection to full double resolution.
double beta_quantile(double a, double b, double p);

/// P(X <= k) for X ~ Binomial(n, p).
double binomial_cdf(long k, long n, double p);

enum class Sided { two_sided, lower, upper };

struct BinomialCI {
  long successes = 0;
  long trials = 0;
  double confidence = 0.95;
  double lower = 0.0;
  double upper = 1.0;
  Sided sided = Sided::two_sided;

  double phat() const { return static_cast<double>(successes) / static_cast<double>(trials); }
  static constexpr std::string_view method = "clopper-pearson";
};

/// Clopper-Pearson interval. `lower` sides put all of 1-confidence below
/// (upper bound fixed at 1); `upper` the reverse.
BinomialCI clopper_pearson(long successes, long trials, double confidence, Sided sided = Sided::two_sided);

/// One-sided lower Clopper-Pearson bound at level 1-alpha is above theta.
/// Equivalent to P(X >= k | theta) < alpha.
bool lower_bound_exceeds(long successes, long trials, double theta, double alpha);
/// One-sided upper bound at level 1-alpha is below theta.
bool upper_bound_below(long successes, long trials, double theta, double alpha);

// ---------------------------------------------------------------------------
// Threshold certification

enum class Verdict { certified, refuted, inconclusive };
std::string_view to_string(Verdict v);

/// Trial sampler: a pure function of the trial index.
using TrialFn = std::function<bool(std::uint64_t trial_index)>;

struct CertifyOptions {
  double threshold = 0.8639;
  double confidence = 0.9999;
  long max_trials = 20000;
  /// Stop at the first trial where either one-sided bound clears the
  /// threshold. When false, run exactly max_trials and decide once.
  bool sequential = true;
  unsigned workers = 1;
};

struct Certificate {
  Verdict verdict = Verdict::inconclusive;
  long trials = 0;
  long successes = 0;
  double threshold = 0.0;
  // One-sided bounds, each at the requested confidence.
  BinomialCI lower;
  BinomialCI upper;
  std::vector<std::uint8_t> outcomes;  // per trial, in trial order
};

/// Runs trials in parallel batches and scans them in index order, so the
/// stopping point and counts are independent of the worker count. Sampler
/// exceptions propagate.
Certificate certify_threshold(const TrialFn& sampler, const CertifyOptions& options);

// ---------------------------------------------------------------------------
// Critical values

struct ProbeRow {
  double param = 0.0;
  long trials = 0;
  long successes = 0;
  double phat = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

// Per-trial thresholds of a monotone crossing family at one box size. Because
// every trial is a monotone coupling over the parameter, the empirical
// crossing probability at any parameter value is the fraction of thresholds
// at or below it, and its 1/2-crossing is the sample median.
struct BoxEstimate {
  double box_side = 0.0;
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> thresholds;  // sorted; +inf where no crossing in range

  /// Empirical crossing probability with a two-sided CP interval.
  ProbeRow probe(double param, double confidence = 0.95) const;
};

struct CriticalEstimate {
  std::string parameter;  // "intensity" | "radius"
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double confidence = 0.9999;
  std::size_t trials_per_probe = 0;
  std::vector<BoxEstimate> per_box;
  /// point(largest box) - point(smallest box)
  double drift = 0.0;
  // Fresh trials (4x) at the bracket ends of the largest box: the fraction
  // crossing strictly below lo must be <= 1/2 and at hi >= 1/2.
  ProbeRow recheck_lo;
  ProbeRow recheck_hi;
  bool sign_ok = false;
};

/// Bracket the median of sorted thresholds by binomial order statistics:
/// [lo, hi] holds the true 1/2-crossing with the given confidence.
BoxEstimate median_bracket(std::vector<double> thresholds, double box_side, double confidence);

struct LambdaSearch {
  double radius = 0.5;
  std::vector<double> box_sides{20.0, 40.0};
  std::size_t trials = 1000;
  double confidence = 0.9999;
  double lambda_min = 0.1;
  double lambda_max = 10.0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Smallest intensity at which a Poisson process on the box crosses it
/// horizontally, under the thinning coupling: points arrive in order of a
/// uniform mark so that the process at intensity l is the first arrivals up
/// to l. +inf if not crossed by lambda_max.
double critical_intensity_sample(const AABB& box, double radius, double lambda_max, RngStream& rng);

/// Throws std::runtime_error when the bracket leaves [lambda_min, lambda_max].
CriticalEstimate estimate_lambda_c(const LambdaSearch& search);

struct RadiusSearch {
  double t = 0.0;
  double box_side = 200.0;
  std::size_t trials = 400;
  double confidence = 0.9999;
  double r_min = 0.05;
  double r_max = 1.0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Perturbed triangular lattice sampled on the box padded by 6 sqrt(t).
PointSet perturbed_lattice_for_box(const AABB& box, double t, const RngStream& rng);

/// Throws std::runtime_error when the bracket leaves [r_min, r_max].
CriticalEstimate estimate_r_c_of_t(const RadiusSearch& search);

/// Direct (uncoupled) estimate of the Poisson box-crossing probability.
ProbeRow poisson_crossing_probability(double lambda, double radius, double box_side, std::size_t trials,
                                      std::uint64_t seed, unsigned workers = 1, double confidence = 0.95);

/// Boolean-model scaling: intensity times radius squared is invariant.
double scale_radius(double lambda_from, double r_from, double lambda_to);

// ---------------------------------------------------------------------------
// Tail bounds

struct PoissonTailBounds {
  double above = 1.0;  // P(P >= (1+eps) lambda)
  double below = 1.0;  // P(P <= (1-eps) lambda)
};

PoissonTailBounds chernoff_poisson(double lambda, double epsilon);
/// Upper tail P(X >= (1+eps) E X) for a sum of n independent Bernoullis.
double chernoff_binomial(long n, double expectation, double epsilon);
/// P(X >= R) for X ~ N(0, sigma^2), valid for R >= sigma.
double gaussian_tail(double sigma, double R);

}  // namespace percopack
