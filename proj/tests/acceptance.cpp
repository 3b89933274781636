// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "percopack/cluster.hpp"
#include "percopack/domination_lab.hpp"
#include "percopack/estimators.hpp"
#include "percopack/parallel.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>

using namespace percopack;

namespace {

using Clock = std::chrono::steady_clock;

// Master seed for every experiment; distinct experiments use disjoint streams.
constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body)
{
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-34s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a)
{
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b)
{
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int run_cli(const std::string& args)
{
  const std::string cmd = std::string(PERCOPACK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

unsigned hardware_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome criterion_certification()
{
  const int code = run_cli("--seed " + std::to_string(kSeed) + " --out acceptance_crossing.json crossing --t 0.01");
  const auto j = nlohmann::json::parse(slurp("acceptance_crossing.json"));
  std::remove("acceptance_crossing.json");
  const long trials = j["counts"]["trials"];
  const long successes = j["counts"]["successes"];
  const bool ok = code == 0 && j["verdict"] == "certified" && trials <= 20000;
  return {ok, std::to_string(successes) + "/" + std::to_string(trials) + " trials, one-sided lower " +
                  fmt("%.5f", j["ci"]["lower"].get<double>()) + " > 0.8639, verdict " +
                  j["verdict"].get<std::string>()};
}

Outcome criterion_threshold_mechanics()
{
  const Certificate always = certify_threshold([](std::uint64_t) { return true; }, CertifyOptions{});
  const long expected = static_cast<long>(std::ceil(std::log(1e-4) / std::log(0.8639)));
  constexpr int seeds = 1000;
  int refuted = 0;
  long worst = 0;
  for (int s = 0; s < seeds; ++s) {
    CertifyOptions opt;
    opt.max_trials = 10000;
    const auto c = certify_threshold(
        [s](std::uint64_t k) { return RngStream(kSeed + s, k).uniform() < 0.80; }, opt);
    refuted += c.verdict == Verdict::refuted;
    worst = std::max(worst, c.trials);
  }
  // Lower one-sided 95% bound on the refutation probability.
  const double lower = clopper_pearson(refuted, seeds, 0.95, Sided::lower).lower;
  const bool ok = always.verdict == Verdict::certified && always.trials == expected && expected == 63 && lower > 0.99;
  return {ok, "constant-true certified at n=" + std::to_string(always.trials) + "; Bernoulli(0.80) refuted " +
                  std::to_string(refuted) + "/" + std::to_string(seeds) + " (95% lower " + fmt("%.4f", lower) +
                  "), max " + std::to_string(worst) + " trials"};
}

Outcome criterion_lambda_window()
{
  const auto t0 = Clock::now();
  LambdaSearch s;
  s.box_sides = {20.0, 40.0};
  s.trials = 1000;
  s.seed = kSeed;
  s.workers = hardware_workers();
  const auto e = estimate_lambda_c(s);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool ok = e.lo >= 1.25 && e.hi <= 1.65 && e.lo <= 1.436 && 1.436 <= e.hi && secs <= 600.0;
  return {ok, "point " + fmt("%.4f", e.point) + ", bracket " + fmt("[%.4f, %.4f]", e.lo, e.hi) +
                  (e.sign_ok ? ", re-probe consistent" : ", re-probe inconsistent")};
}

Outcome criterion_radius_scaling()
{
  RngStream rng(kSeed, 4ULL << 32);
  double worst = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double l1 = std::exp(rng.uniform(-5, 5));
    const double r1 = std::exp(rng.uniform(-5, 5));
    const double l2 = std::exp(rng.uniform(-5, 5));
    const double r2 = scale_radius(l1, r1, l2);
    worst = std::max(worst, std::abs(l2 * r2 * r2 - l1 * r1 * r1) / (l1 * r1 * r1));
  }
  return {worst <= 1e-12, "max relative error " + fmt("%.2e", worst) + " over 1e5 triples"};
}

Outcome criterion_radius_trend()
{
  RadiusSearch zero;
  zero.t = 0.0;
  zero.box_side = 200.0;
  zero.trials = 24;
  zero.workers = hardware_workers();
  const auto e0 = estimate_r_c_of_t(zero);

  RadiusSearch hot = zero;
  hot.t = 100.0;
  hot.trials = 100;
  const auto e100 = estimate_r_c_of_t(hot);
  const double target = 0.5576;
  const bool ok = e0.point <= 0.5 && e0.hi <= 0.5 && e100.hi >= 0.52 && e100.lo >= target - 0.05 &&
                  e100.hi <= target + 0.05;
  return {ok, "r_c(0) = " + fmt("%.14f", e0.point) + "; r_c(100) = " + fmt("%.4f", e100.point) + " in " +
                  fmt("[%.4f, %.4f]", e100.lo, e100.hi)};
}

Outcome criterion_neighbourhood()
{
  bool ok = true;
  std::string detail;
  for (double delta : {0.25, 0.1, 0.04}) {
    const double C = neighborhood_constant(delta);
    const auto size = static_cast<double>(build_J(delta).size());
    const bool window = size >= (C - 3) * (C - 3) && size <= 4.0 / 3.0 * C * C;
    const auto a = well_behaved_probability(DominationParams(delta, 1.0));
    const auto b = well_behaved_probability(DominationParams(delta, 250.0));
    const double rel = std::abs(a.probability - b.probability) / a.probability;
    ok = ok && window && a.probability >= 1 - 5 * delta && rel <= 1e-12;
    detail += fmt("d=%.2f: ", delta) + "|J|=" + std::to_string(static_cast<long>(size)) +
              fmt(" W=%.5f rel=%.0e; ", a.probability, rel);
  }
  return {ok, detail};
}

Outcome criterion_path_law()
{
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (int m = 2; m <= 5; ++m) {
    const auto law = path_law_1_over_m_factorial(m, 1e-3, 100000, kSeed, hardware_workers());
    const double z = (law.phat - law.expected) / law.sigma;
    ok = ok && std::abs(z) <= 3.0;
    detail += "m=" + std::to_string(m) + fmt(" z=%+.2f; ", z);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return {ok && secs <= 60.0, detail};
}

Outcome criterion_edge_monotone()
{
  const auto e = monotone_edge_preservation(hexagonal_flower(), {0.001, 0.01, 0.1}, 1000, kSeed);
  return {e.trials == 1000 && e.pathwise_violations == 0,
          std::to_string(e.pathwise_violations) + " violations over " + std::to_string(e.trials) + " seeds, " +
              std::to_string(e.edges) + " edges"};
}

// O(n^2) oracle pieces.
std::vector<int> bfs_labels(const std::vector<Point>& pts, double r)
{
  std::vector<int> label(pts.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    if (label[s] >= 0) continue;
    std::queue<std::size_t> q;
    q.push(s);
    label[s] = next;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (std::size_t v = 0; v < pts.size(); ++v)
        if (label[v] < 0 && (pts[u] - pts[v]).norm() <= 2 * r) {
          label[v] = next;
          q.push(v);
        }
    }
    ++next;
  }
  return label;
}

Outcome criterion_oracles()
{
  int mismatches = 0;
  double diameter_error = 0.0;
  for (std::uint64_t inst = 0; inst < 1000; ++inst) {
    RngStream rng(kSeed, (9ULL << 32) | inst);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 301));
    const double side = rng.uniform(2, 30);
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {rng.uniform(0, side), rng.uniform(0, side)};
    IntersectionGraph g(pts, 0.5);
    const auto labels = g.component_labels();
    const auto ref = bfs_labels(pts, 0.5);
    int groups = 0;
    for (std::size_t k = 0; k < n; ++k) {
      mismatches += static_cast<int>(labels[k]) != ref[k];
      groups = std::max(groups, ref[k] + 1);
    }
    std::vector<std::vector<Point>> members(static_cast<std::size_t>(groups));
    for (std::size_t k = 0; k < n; ++k) members[static_cast<std::size_t>(ref[k])].push_back(pts[k]);
    for (const auto& m : members) {
      double brute = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) brute = std::max(brute, (m[i] - m[j]).norm());
      diameter_error = std::max(diameter_error, std::abs(point_diameter(m) - brute));
    }
  }
  return {mismatches == 0 && diameter_error == 0.0,
          std::to_string(mismatches) + " label mismatches, max diameter error " + fmt("%.1e", diameter_error)};
}

Outcome criterion_determinism()
{
  const int a = run_cli("--seed " + std::to_string(kSeed) + " --workers 1 --out acceptance_verify_1.json verify");
  const int b = run_cli("--seed " + std::to_string(kSeed) + " --workers 4 --out acceptance_verify_4.json verify");
  const std::string ra = slurp("acceptance_verify_1.json");
  const std::string rb = slurp("acceptance_verify_4.json");
  std::remove("acceptance_verify_1.json");
  std::remove("acceptance_verify_4.json");
  const bool ok = a == 0 && b == 0 && !ra.empty() && ra == rb;
  return {ok, "verify exit codes " + std::to_string(a) + "/" + std::to_string(b) + ", reports " +
                  (ra == rb ? "byte-identical" : "differ") + " (" + std::to_string(ra.size()) + " bytes)"};
}

Outcome criterion_tail_bounds()
{
  constexpr std::size_t draws = 1000000;
  constexpr std::size_t blocks = 50;
  std::uint64_t id = 0;
  const auto frequency = [&](const std::function<bool(RngStream&)>& event) {
    const std::uint64_t stream = id++;
    std::vector<std::size_t> hits(blocks, 0);
    parallel_for(0, blocks, hardware_workers(), [&](std::size_t b) {
      RngStream rng(kSeed, ((11 + stream) << 32) | b);
      for (std::size_t k = 0; k < draws / blocks; ++k) hits[b] += event(rng);
    });
    std::size_t total = 0;
    for (auto h : hits) total += h;
    return static_cast<double>(total) / draws;
  };
  int points = 0, held = 0;
  double tightest = 0.0;  // largest frequency / bound
  const auto record = [&](double freq, double bound) {
    ++points;
    held += freq <= bound;
    tightest = std::max(tightest, freq / bound);
  };
  for (double lambda : {5.0, 20.0, 100.0})
    for (double eps : {0.1, 0.3, 0.6}) {
      const auto b = chernoff_poisson(lambda, eps);
      record(frequency([&](RngStream& r) { return r.poisson(lambda) >= (1 + eps) * lambda; }), b.above);
      record(frequency([&](RngStream& r) { return r.poisson(lambda) <= (1 - eps) * lambda; }), b.below);
    }
  for (long n : {50L, 200L})
    for (double eps : {0.1, 0.4}) {
      const double p = 0.4;
      record(frequency([&](RngStream& r) {
               long x = 0;
               for (long i = 0; i < n; ++i) x += r.uniform() < p;
               return x >= (1 + eps) * n * p;
             }),
             chernoff_binomial(n, n * p, eps));
    }
  for (double R : {2.0, 3.0, 5.0, 7.0})
    record(frequency([&](RngStream& r) { return 2.0 * r.normal() >= R; }), gaussian_tail(2.0, R));
  return {held == points, std::to_string(held) + "/" + std::to_string(points) +
                              " parameter points dominated, max frequency/bound " + fmt("%.3f", tightest)};
}

}  // namespace

int main()
{
  std::printf("acceptance criteria (%u hardware threads)\n", hardware_workers());
  report(1, "certification at t = 0.01", criterion_certification);
  report(2, "threshold mechanics", criterion_threshold_mechanics);
  report(3, "critical intensity window", criterion_lambda_window);
  report(4, "radius scaling invariant", criterion_radius_scaling);
  report(5, "critical radius trend", criterion_radius_trend);
  report(6, "neighbourhood and well-behaved", criterion_neighbourhood);
  report(7, "path law 1/m!", criterion_path_law);
  report(8, "pathwise edge monotonicity", criterion_edge_monotone);
  report(9, "union-find and diameter oracles", criterion_oracles);
  report(10, "determinism across workers", criterion_determinism);
  report(11, "tail bounds dominate simulation", criterion_tail_bounds);
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
