#include "percopack/estimators.hpp"

#include "percopack/parallel.hpp"
#include "percopack/pointproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace percopack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double beta_continued_fraction(double a, double b, double x)
{
  constexpr int kMaxIter = 200000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

void require_probability(double p, const char* what)
{
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(what);
}

}  // namespace

double incomplete_beta(double a, double b, double x)
{
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta: a and b must be positive");
  require_probability(x, "incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double beta_quantile(double a, double b, double p)
{
  require_probability(p, "beta_quantile: p outside [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 1100 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (incomplete_beta(a, b, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double binomial_cdf(long k, long n, double p)
{
  if (n < 0) throw std::invalid_argument("binomial_cdf: negative n");
  require_probability(p, "binomial_cdf: p outside [0, 1]");
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  return incomplete_beta(static_cast<double>(n - k), static_cast<double>(k + 1), 1.0 - p);
}

BinomialCI clopper_pearson(long successes, long trials, double confidence, Sided sided)
{
  if (trials < 1 || successes < 0 || successes > trials)
    throw std::invalid_argument("clopper_pearson: need 0 <= successes <= trials and trials >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("clopper_pearson: confidence outside (0, 1)");
  BinomialCI ci;
  ci.successes = successes;
  ci.trials = trials;
  ci.confidence = confidence;
  ci.sided = sided;
  const double alpha = 1.0 - confidence;
  const double tail = sided == Sided::two_sided ? alpha / 2.0 : alpha;
  const auto k = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  if (sided != Sided::upper) ci.lower = successes == 0 ? 0.0 : beta_quantile(k, n - k + 1.0, tail);
  // Upper bound through the mirrored quantile keeps precision near 1.
  if (sided != Sided::lower) ci.upper = successes == trials ? 1.0 : 1.0 - beta_quantile(n - k, k + 1.0, tail);
  return ci;
}

bool lower_bound_exceeds(long successes, long trials, double theta, double alpha)
{
  if (successes == 0) return false;
  const auto k = static_cast<double>(successes);
  return incomplete_beta(k, static_cast<double>(trials) - k + 1.0, theta) < alpha;
}

bool upper_bound_below(long successes, long trials, double theta, double alpha)
{
  if (successes == trials) return false;
  const auto k = static_cast<double>(successes);
  return incomplete_beta(static_cast<double>(trials) - k, k + 1.0, 1.0 - theta) < alpha;
}

std::string_view to_string(Verdict v)
{
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Certificate certify_threshold(const TrialFn& sampler, const CertifyOptions& options)
{
  if (!(options.threshold > 0.0 && options.threshold < 1.0))
    throw std::invalid_argument("certify_threshold: threshold outside (0, 1)");
  if (options.max_trials < 1) throw std::invalid_argument("certify_threshold: max_trials must be >= 1");
  const double alpha = 1.0 - options.confidence;
  const double theta = options.threshold;
  const unsigned workers = resolve_workers(options.workers);
  const auto batch = static_cast<long>(std::max(64u, 16u * workers));

  Certificate cert;
  cert.threshold = theta;
  cert.outcomes.reserve(static_cast<std::size_t>(std::min(options.max_trials, 100000L)));
  bool decided = false;
  for (long next = 0; next < options.max_trials && !decided;) {
    const long count = std::min(batch, options.max_trials - next);
    std::vector<std::uint8_t> res(static_cast<std::size_t>(count));
    parallel_for(0, res.size(), workers,
                 [&](std::size_t i) { res[i] = sampler(static_cast<std::uint64_t>(next) + i) ? 1 : 0; });
    for (const auto r : res) {
      cert.outcomes.push_back(r);
      cert.successes += r;
      ++cert.trials;
      if (!options.sequential) continue;
      const double phat = static_cast<double>(cert.successes) / static_cast<double>(cert.trials);
      if (phat > theta && lower_bound_exceeds(cert.successes, cert.trials, theta, alpha)) {
        cert.verdict = Verdict::certified;
        decided = true;
      } else if (phat < theta && upper_bound_below(cert.successes, cert.trials, theta, alpha)) {
        cert.verdict = Verdict::refuted;
        decided = true;
      }
      if (decided) break;
    }
    next += count;
  }
  if (!options.sequential) {
    if (lower_bound_exceeds(cert.successes, cert.trials, theta, alpha))
      cert.verdict = Verdict::certified;
    else if (upper_bound_below(cert.successes, cert.trials, theta, alpha))
      cert.verdict = Verdict::refuted;
  }
  cert.lower = clopper_pearson(cert.successes, cert.trials, options.confidence, Sided::lower);
  cert.upper = clopper_pearson(cert.successes, cert.trials, options.confidence, Sided::upper);
  return cert;
}

ProbeRow BoxEstimate::probe(double param, double confidence) const
{
  ProbeRow row;
  row.param = param;
  row.trials = static_cast<long>(thresholds.size());
  row.successes = static_cast<long>(std::upper_bound(thresholds.begin(), thresholds.end(), param) - thresholds.begin());
  if (row.trials == 0) return row;
  const BinomialCI ci = clopper_pearson(row.successes, row.trials, confidence);
  row.phat = ci.phat();
  row.lo = ci.lower;
  row.hi = ci.upper;
  return row;
}

BoxEstimate median_bracket(std::vector<double> thresholds, double box_side, double confidence)
{
  if (thresholds.empty()) throw std::invalid_argument("median_bracket: no thresholds");
  std::sort(thresholds.begin(), thresholds.end());
  const auto n = static_cast<long>(thresholds.size());
  const double half_alpha = (1.0 - confidence) / 2.0;
  // Largest rank k with P(Bin(n, 1/2) <= k-1) <= alpha/2; then
  // P(theta_(k) > median) <= alpha/2 and symmetrically for rank n-k+1.
  long k = 0;
  while (k + 1 <= (n + 1) / 2 && binomial_cdf(k, n, 0.5) <= half_alpha) ++k;
  BoxEstimate est;
  est.box_side = box_side;
  est.point = thresholds[static_cast<std::size_t>((n + 1) / 2 - 1)];
  est.lo = k >= 1 ? thresholds[static_cast<std::size_t>(k - 1)] : -kInf;
  est.hi = k >= 1 ? thresholds[static_cast<std::size_t>(n - k)] : kInf;
  est.thresholds = std::move(thresholds);
  return est;
}

double critical_intensity_sample(const AABB& box, double radius, double lambda_max, RngStream& rng)
{
  IncrementalCrossing detector(box, radius, Direction::horizontal);
  const double rate = box.area();
  double level = 0.0;
  for (;;) {
    level += rng.exponential(rate);
    if (level > lambda_max) return kInf;
    const Point p{rng.uniform(box.xmin, box.xmax), rng.uniform(box.ymin, box.ymax)};
    if (detector.insert(p)) return level;
  }
}

namespace {

ProbeRow count_row(double param, const std::vector<double>& sorted, bool strictly_below)
{
  ProbeRow row;
  row.param = param;
  row.trials = static_cast<long>(sorted.size());
  const auto it = strictly_below ? std::lower_bound(sorted.begin(), sorted.end(), param)
                                 : std::upper_bound(sorted.begin(), sorted.end(), param);
  row.successes = static_cast<long>(it - sorted.begin());
  const BinomialCI ci = clopper_pearson(row.successes, row.trials, 0.95);
  row.phat = ci.phat();
  row.lo = ci.lower;
  row.hi = ci.upper;
  return row;
}

// Re-probes the bracket of the last box with fresh thresholds.
void recheck(CriticalEstimate& est, std::vector<double> fresh)
{
  std::sort(fresh.begin(), fresh.end());
  est.recheck_lo = count_row(est.lo, fresh, true);
  est.recheck_hi = count_row(est.hi, fresh, false);
  est.sign_ok = est.recheck_lo.phat <= 0.5 && est.recheck_hi.phat >= 0.5;
}

constexpr std::uint64_t kRecheckDomain = 1ULL << 62;

CriticalEstimate finish_estimate(std::string parameter, std::vector<BoxEstimate> boxes, double confidence,
                                 std::size_t trials, double lo_limit, double hi_limit)
{
  CriticalEstimate est;
  est.parameter = std::move(parameter);
  est.confidence = confidence;
  est.trials_per_probe = trials;
  for (const auto& b : boxes)
    if (!(b.lo >= lo_limit) || !(b.hi <= hi_limit) || !std::isfinite(b.hi))
      throw std::runtime_error("critical " + est.parameter + " bracket not found in [" + std::to_string(lo_limit) +
                               ", " + std::to_string(hi_limit) + "] at box " + std::to_string(b.box_side));
  est.point = boxes.back().point;
  est.lo = boxes.back().lo;
  est.hi = boxes.back().hi;
  est.drift = boxes.back().point - boxes.front().point;
  est.per_box = std::move(boxes);
  return est;
}

}  // namespace

CriticalEstimate estimate_lambda_c(const LambdaSearch& s)
{
  if (s.box_sides.empty() || !std::is_sorted(s.box_sides.begin(), s.box_sides.end()) ||
      std::adjacent_find(s.box_sides.begin(), s.box_sides.end()) != s.box_sides.end())
    throw std::invalid_argument("estimate_lambda_c: box sides must be strictly increasing");
  if (s.trials == 0) throw std::invalid_argument("estimate_lambda_c: need trials");
  std::vector<BoxEstimate> boxes;
  for (std::size_t b = 0; b < s.box_sides.size(); ++b) {
    const double L = s.box_sides[b];
    const AABB box(0.0, L, 0.0, L);
    std::vector<double> thresholds(s.trials);
    parallel_for(0, s.trials, s.workers, [&](std::size_t k) {
      RngStream rng(s.seed, (static_cast<std::uint64_t>(b) << 40) | k);
      thresholds[k] = critical_intensity_sample(box, s.radius, s.lambda_max, rng);
    });
    boxes.push_back(median_bracket(std::move(thresholds), L, s.confidence));
  }
  CriticalEstimate est =
      finish_estimate("intensity", std::move(boxes), s.confidence, s.trials, s.lambda_min, s.lambda_max);
  const double L = s.box_sides.back();
  const AABB box(0.0, L, 0.0, L);
  std::vector<double> fresh(4 * s.trials);
  parallel_for(0, fresh.size(), s.workers, [&](std::size_t k) {
    RngStream rng(s.seed, kRecheckDomain | k);
    fresh[k] = critical_intensity_sample(box, s.radius, s.lambda_max, rng);
  });
  recheck(est, std::move(fresh));
  return est;
}

PointSet perturbed_lattice_for_box(const AABB& box, double t, const RngStream& rng)
{
  return perturbed_tri_lattice(box.padded(6.0 * std::sqrt(t)), t, rng);
}

CriticalEstimate estimate_r_c_of_t(const RadiusSearch& s)
{
  if (!(s.t >= 0.0)) throw std::invalid_argument("estimate_r_c_of_t: negative time");
  if (s.trials == 0) throw std::invalid_argument("estimate_r_c_of_t: need trials");
  const AABB box(0.0, s.box_side, 0.0, s.box_side);
  const auto thresholds_for = [&](std::size_t count, std::uint64_t domain) {
    std::vector<double> out(count);
    parallel_for(0, count, s.workers, [&](std::size_t k) {
      const RngStream rng(s.seed, domain | k);
      const PointSet pts = perturbed_lattice_for_box(box, s.t, rng);
      out[k] = critical_crossing_radius(pts.points, box, Direction::horizontal, s.r_max);
    });
    return out;
  };
  std::vector<BoxEstimate> boxes;
  boxes.push_back(median_bracket(thresholds_for(s.trials, 0), s.box_side, s.confidence));
  CriticalEstimate est = finish_estimate("radius", std::move(boxes), s.confidence, s.trials, s.r_min, s.r_max);
  recheck(est, thresholds_for(4 * s.trials, kRecheckDomain));
  return est;
}

ProbeRow poisson_crossing_probability(double lambda, double radius, double box_side, std::size_t trials,
                                      std::uint64_t seed, unsigned workers, double confidence)
{
  const AABB box(0.0, box_side, 0.0, box_side);
  std::vector<std::uint8_t> hit(trials);
  parallel_for(0, trials, workers, [&](std::size_t k) {
    RngStream rng(seed, k);
    hit[k] = box_crossing(sample_poisson_pp(Region{box}, lambda, rng, radius), box, Direction::horizontal);
  });
  ProbeRow row;
  row.param = lambda;
  row.trials = static_cast<long>(trials);
  for (auto h : hit) row.successes += h;
  const BinomialCI ci = clopper_pearson(row.successes, row.trials, confidence);
  row.phat = ci.phat();
  row.lo = ci.lower;
  row.hi = ci.upper;
  return row;
}

double scale_radius(double lambda_from, double r_from, double lambda_to)
{
  if (!(lambda_from > 0.0) || !(r_from > 0.0) || !(lambda_to > 0.0))
    throw std::invalid_argument("scale_radius: arguments must be positive");
  return r_from * std::sqrt(lambda_from / lambda_to);
}

PoissonTailBounds chernoff_poisson(double lambda, double epsilon)
{
  if (!(lambda > 0.0)) throw std::invalid_argument("chernoff_poisson: lambda must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("chernoff_poisson: epsilon outside (0, 1)");
  const double e2 = epsilon * epsilon;
  return {std::exp(-lambda * e2 / 2.0 * (1.0 - epsilon / 3.0)), std::exp(-lambda * e2 / 2.0)};
}

double chernoff_binomial(long n, double expectation, double epsilon)
{
  if (n < 1) throw std::invalid_argument("chernoff_binomial: n must be >= 1");
  if (!(expectation >= 0.0 && expectation <= static_cast<double>(n)))
    throw std::invalid_argument("chernoff_binomial: expectation outside [0, n]");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("chernoff_binomial: negative epsilon");
  return std::exp(-2.0 * epsilon * epsilon * expectation * expectation / static_cast<double>(n));
}

double gaussian_tail(double sigma, double R)
{
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_tail: sigma must be positive");
  if (!(R >= sigma)) throw std::domain_error("gaussian_tail: bound requires R >= sigma");
  return sigma / (std::sqrt(2.0 * kPi) * R) * std::exp(-R * R / (2.0 * sigma * sigma));
}

}  // namespace percopack
