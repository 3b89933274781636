#include "percopack/verify.hpp"

#include "percopack/cluster.hpp"
#include "percopack/crossing.hpp"
#include "percopack/domination_lab.hpp"
#include "percopack/estimators.hpp"
#include "percopack/io.hpp"
#include "percopack/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <sstream>

namespace percopack {

namespace {

std::uint64_t domain(std::uint64_t check, std::uint64_t k) { return (check << 48) | k; }

std::string fmt(const char* f, double a)
{
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

VerifyCheck check_constant_true()
{
  const Certificate c = certify_threshold([](std::uint64_t) { return true; }, CertifyOptions{});
  return {"certify/constant-true-63", c.verdict == Verdict::certified && c.trials == 63,
          std::string(to_string(c.verdict)) + " after " + std::to_string(c.trials) + " trials"};
}

VerifyCheck check_bernoulli_refuted(const VerifyOptions& o)
{
  constexpr int kSeeds = 20;
  int refuted = 0;
  long worst = 0;
  for (int s = 0; s < kSeeds; ++s) {
    CertifyOptions opt;
    opt.max_trials = 10000;
    opt.workers = o.workers;
    const auto c = certify_threshold(
        [&](std::uint64_t k) { return RngStream(o.seed + s, domain(2, k)).uniform() < 0.80; }, opt);
    if (c.verdict == Verdict::refuted) ++refuted;
    worst = std::max(worst, c.trials);
  }
  return {"certify/bernoulli-0.80-refuted", refuted == kSeeds,
          std::to_string(refuted) + "/" + std::to_string(kSeeds) + " refuted, max " + std::to_string(worst) +
              " trials"};
}

VerifyCheck check_ci_coverage(const VerifyOptions& o)
{
  constexpr long n = 500;
  constexpr std::size_t experiments = 10000;
  const double alpha = 0.05;
  bool ok = true;
  std::ostringstream detail;
  const double probs[] = {0.1, 0.5, 0.8639, 0.95};
  for (std::uint64_t pi = 0; pi < 4; ++pi) {
    const double p = probs[pi];
    std::vector<std::uint8_t> covered(experiments);
    parallel_for(0, experiments, o.workers, [&](std::size_t e) {
      RngStream rng(o.seed, domain(3, (pi << 32) | e));
      long k = 0;
      for (long i = 0; i < n; ++i) k += rng.uniform() < p;
      covered[e] = !lower_bound_exceeds(k, n, p, alpha / 2) && !upper_bound_below(k, n, p, alpha / 2);
    });
    const double rate = static_cast<double>(std::count(covered.begin(), covered.end(), 1)) / experiments;
    ok = ok && rate >= 0.95;
    detail << "p=" << p << ":" << fmt("%.4f", rate) << " ";
  }
  return {"ci/clopper-pearson-coverage", ok, detail.str()};
}

VerifyCheck check_no_contradiction()
{
  bool ok = true;
  for (long n = 1; n <= 200 && ok; n += 7)
    for (long k = 0; k <= n && ok; ++k)
      for (const double theta : {0.1, 0.5, 0.8639})
        if (lower_bound_exceeds(k, n, theta, 1e-4) && upper_bound_below(k, n, theta, 1e-4)) ok = false;
  return {"certify/never-both", ok, ok ? "no (k, n) certifies and refutes" : "contradiction found"};
}

VerifyCheck check_scaling(const VerifyOptions& o)
{
  RngStream rng(o.seed, domain(5, 0));
  double worst = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double l1 = std::exp(rng.uniform(-5.0, 5.0));
    const double r1 = std::exp(rng.uniform(-5.0, 5.0));
    const double l2 = std::exp(rng.uniform(-5.0, 5.0));
    const double r2 = scale_radius(l1, r1, l2);
    worst = std::max(worst, std::abs(l2 * r2 * r2 - l1 * r1 * r1) / (l1 * r1 * r1));
  }
  return {"scaling/lambda-r2-invariant", worst <= 1e-12, fmt("max relative error %.3g", worst)};
}

VerifyCheck check_union_find(const VerifyOptions& o)
{
  std::size_t mismatches = 0;
  double worst_diam = 0.0;
  for (std::uint64_t inst = 0; inst < 1000; ++inst) {
    RngStream rng(o.seed, domain(6, inst));
    const auto n = static_cast<std::size_t>(1 + rng.next_u64() % 300);
    const double L = rng.uniform(3.0, 30.0);
    const double r = rng.uniform(0.2, 1.0);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {rng.uniform(0.0, L), rng.uniform(0.0, L)};

    std::vector<int> label(n, -1);
    int comps = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (label[s] >= 0) continue;
      std::deque<std::size_t> queue{s};
      label[s] = comps;
      while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n; ++v)
          if (label[v] < 0 && balls_adjacent(pts[u], pts[v], r)) {
            label[v] = comps;
            queue.push_back(v);
          }
      }
      ++comps;
    }
    IntersectionGraph g(pts, r);
    if (g.component_count() != static_cast<std::size_t>(comps)) ++mismatches;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (g.same(i, j) != (label[i] == label[j])) {
          ++mismatches;
          i = static_cast<std::uint32_t>(n);
          break;
        }

    double brute = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (label[i] == label[j]) brute = std::max(brute, (pts[i] - pts[j]).norm());
    const double fast = component_stats(g, Region{AABB(0.0, L, 0.0, L)}).largest_diameter;
    worst_diam = std::max(worst_diam, std::abs(fast - brute));
  }
  return {"cluster/union-find-vs-bfs", mismatches == 0 && worst_diam <= 1e-12,
          std::to_string(mismatches) + " mismatches in 1000 instances, diameter error " + fmt("%.3g", worst_diam)};
}

VerifyCheck check_neighborhood()
{
  bool ok = true;
  std::ostringstream detail;
  for (const double delta : {0.25, 0.1, 0.04}) {
    const double C = neighborhood_constant(delta);
    const auto size = static_cast<double>(build_J(delta).size());
    ok = ok && size >= (C - 3) * (C - 3) && size <= 4.0 / 3.0 * C * C;
    detail << "delta=" << delta << ":|J|=" << size << " ";
  }
  return {"lab/neighborhood-size-window", ok, detail.str()};
}

VerifyCheck check_well_behaved()
{
  bool ok = true;
  std::ostringstream detail;
  for (const double delta : {0.25, 0.1, 0.04}) {
    const auto a = well_behaved_probability(DominationParams(delta, 100.0));
    const auto b = well_behaved_probability(DominationParams(delta, 400.0));
    const double rel = std::abs(a.probability - b.probability) / a.probability;
    ok = ok && a.bound_holds && a.probability <= 1.0 && rel <= 1e-12;
    detail << "delta=" << delta << ":" << fmt("%.6f", a.probability) << " ";
  }
  return {"lab/well-behaved-bound-and-scale", ok, detail.str()};
}

VerifyCheck check_path_law(const VerifyOptions& o)
{
  bool ok = true;
  std::ostringstream detail;
  for (int m = 2; m <= 5; ++m) {
    const auto r = path_law_1_over_m_factorial(m, 0.01, 100000, o.seed + static_cast<std::uint64_t>(m), o.workers);
    ok = ok && std::abs(r.phat - r.expected) <= 3.0 * r.sigma;
    detail << "m=" << m << ":" << fmt("%.5f", r.phat) << " ";
  }
  return {"lab/path-law-1-over-m-factorial", ok, detail.str()};
}

VerifyCheck check_edge_monotone(const VerifyOptions& o)
{
  const auto r = monotone_edge_preservation(hexagonal_flower(), {0.001, 0.01, 0.1}, 1000, o.seed);
  return {"lab/edge-preservation-pathwise", r.pathwise_violations == 0,
          std::to_string(r.pathwise_violations) + " violations; freq " + fmt("%.3f", r.frequency[0]) + " " +
              fmt("%.3f", r.frequency[1]) + " " + fmt("%.3f", r.frequency[2])};
}

VerifyCheck check_tail_bounds(const VerifyOptions& o)
{
  constexpr std::size_t draws = 1000000;
  bool ok = true;
  int points = 0;
  const auto freq = [&](std::uint64_t id, const std::function<bool(RngStream&)>& event) {
    std::vector<std::uint32_t> hits(64, 0);
    parallel_for(0, hits.size(), o.workers, [&](std::size_t b) {
      RngStream rng(o.seed, domain(11, (id << 8) | b));
      for (std::size_t k = 0; k < draws / hits.size(); ++k) hits[b] += event(rng);
    });
    std::size_t total = 0;
    for (auto h : hits) total += h;
    return static_cast<double>(total) / static_cast<double>(draws / hits.size() * hits.size());
  };
  std::uint64_t id = 0;
  for (const double lambda : {10.0, 50.0})
    for (const double eps : {0.2, 0.5}) {
      const auto b = chernoff_poisson(lambda, eps);
      const double up = freq(id++, [&](RngStream& r) { return r.poisson(lambda) >= (1 + eps) * lambda; });
      const double down = freq(id++, [&](RngStream& r) { return r.poisson(lambda) <= (1 - eps) * lambda; });
      ok = ok && up <= b.above && down <= b.below;
      points += 2;
    }
  for (const double eps : {0.2, 0.5}) {
    const long n = 100;
    const double p = 0.3;
    const double bound = chernoff_binomial(n, n * p, eps);
    const double f = freq(id++, [&](RngStream& r) {
      long x = 0;
      for (long i = 0; i < n; ++i) x += r.uniform() < p;
      return x >= (1 + eps) * n * p;
    });
    ok = ok && f <= bound;
    ++points;
  }
  for (const double R : {1.0, 2.0, 3.0}) {
    const double f = freq(id++, [&](RngStream& r) { return r.normal() >= R; });
    ok = ok && f <= gaussian_tail(1.0, R);
    ++points;
  }
  return {"bounds/tail-bounds-dominate-simulation", ok, std::to_string(points) + " parameter points, 1e6 draws each"};
}

VerifyCheck check_crossing_t0(const VerifyOptions& o)
{
  const PairFixture f = build_fixture();
  std::vector<std::uint8_t> ok(20);
  parallel_for(0, ok.size(), o.workers,
               [&](std::size_t k) { ok[k] = sample_crossing_event(f, 0.0, RngStream(o.seed, k)).success; });
  const auto n = std::count(ok.begin(), ok.end(), 1);
  return {"crossing/fixture-t0", n == 20,
          std::to_string(f.nodes.size()) + " candidate nodes, " + std::to_string(n) + "/20 trials cross"};
}

VerifyCheck check_radius_t0(const VerifyOptions& o)
{
  RadiusSearch s;
  s.t = 0.0;
  s.box_side = 50.0;
  s.trials = 24;
  s.seed = o.seed;
  s.workers = o.workers;
  const auto e = estimate_r_c_of_t(s);
  return {"critical/radius-t0-tangency", e.point <= 0.5 && e.hi <= 0.5, "r_c(0) = " + format_double(e.point)};
}

VerifyCheck check_empty_hexagon(const VerifyOptions& o)
{
  const auto zero = empty_hexagon_probability(0.0, 2.0, 10, o.seed, o.workers);
  const auto one = empty_hexagon_probability(1.0, 0.5, 20000, o.seed, o.workers);
  return {"lab/empty-hexagon", zero.empty == 0 && one.consistent,
          "t=0:" + fmt("%.4f", zero.phat) + " t=1:" + fmt("%.4f", one.phat) + " ref " + fmt("%.4f", one.reference)};
}

VerifyCheck check_renormalization(const VerifyOptions& o)
{
  const auto full = renormalization_field_demo(1.0, 1.0, 40, 40, o.seed);
  const auto sparse = renormalization_field_demo(0.1, 1.0, 100, 100, o.seed);
  return {"lab/renormalization-field", full.largest == full.cells && sparse.largest_fraction < 0.05,
          "p=1:" + fmt("%.3f", full.largest_fraction) + " p=0.1:" + fmt("%.4f", sparse.largest_fraction)};
}

}  // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& o)
{
  std::vector<VerifyCheck> out;
  const std::vector<std::function<VerifyCheck()>> checks{
      [&] { return check_constant_true(); },
      [&] { return check_bernoulli_refuted(o); },
      [&] { return check_no_contradiction(); },
      [&] { return check_ci_coverage(o); },
      [&] { return check_scaling(o); },
      [&] { return check_union_find(o); },
      [&] { return check_neighborhood(); },
      [&] { return check_well_behaved(); },
      [&] { return check_path_law(o); },
      [&] { return check_edge_monotone(o); },
      [&] { return check_tail_bounds(o); },
      [&] { return check_crossing_t0(o); },
      [&] { return check_radius_t0(o); },
      [&] { return check_empty_hexagon(o); },
      [&] { return check_renormalization(o); },
  };
  for (const auto& c : checks) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"(check threw)", false, e.what()});
    }
  }
  return out;
}

std::string format_verify_table(const std::vector<VerifyCheck>& checks)
{
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ') << c.detail
       << '\n';
    passed += c.passed;
  }
  os << passed << '/' << checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace percopack
