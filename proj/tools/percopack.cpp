// percopack command-line front end.
//
//   percopack <crossing|critical|lab|render|verify> [flags]
//   global: --seed <u64> --workers <n> --out <path> --config <json> --timing
//
// Exit codes: 0 certified / success, 1 refuted / check failure,
// 2 inconclusive, bracket failure or unknown experiment, 3 runtime error.

#include "percopack/crossing.hpp"
#include "percopack/domination_lab.hpp"
#include "percopack/estimators.hpp"
#include "percopack/io.hpp"
#include "percopack/parallel.hpp"
#include "percopack/render.hpp"
#include "percopack/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace percopack;

namespace {

constexpr int kExitRuntime = 3;
const double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Global {
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;
  std::string config;
  bool timing = false;
};

const std::vector<std::string> kExperiments{"neighborhood",      "well-behaved",    "residual", "empty-hexagon",
                                            "path-law",          "edge-preservation", "renormalization", "figure2"};

std::vector<double> parse_list(const std::string& text)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

double or_default(double v, double fallback) { return std::isnan(v) ? fallback : v; }

// Inserts config-file values as flags right after the subcommand, skipping
// keys the user already passed on the command line (flags win).
std::vector<std::string> expand_config(const std::vector<std::string>& args, const std::set<std::string>& commands)
{
  std::string path;
  for (std::size_t k = 1; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  const Json cfg = Json::parse(in);
  if (!cfg.is_object()) throw std::runtime_error("config must be a JSON object");

  std::set<std::string> given;
  std::size_t insert_at = args.size();
  for (std::size_t k = 1; k < args.size(); ++k) {
    if (args[k].rfind("--", 0) == 0) given.insert(args[k].substr(2, args[k].find('=') - 2));
    if (insert_at == args.size() && commands.count(args[k])) insert_at = k + 1;
  }
  if (insert_at < args.size() && args[insert_at - 1] == "lab" && args[insert_at].rfind("-", 0) != 0) ++insert_at;

  std::vector<std::string> extra;
  for (const auto& [raw_key, value] : cfg.items()) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config" || key == "command" || given.count(key)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back("--" + key);
      continue;
    }
    extra.push_back("--" + key);
    if (value.is_string()) {
      extra.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      extra.push_back(joined);
    } else {
      extra.push_back(value.dump());
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + static_cast<long>(insert_at));
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), args.begin() + static_cast<long>(insert_at), args.end());
  return out;
}

class Clock {
public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Global& g, Report report, const Clock& clock)
{
  report.seed = g.seed;
  report.config["seed"] = g.seed;
  report.config["params"] = report.params;
  if (g.timing) report.wall_time = clock.seconds();
  write_text(g.out, report_to_json(report).dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct CrossingArgs {
  double t = 0.01;
  double side = 50.0;
  long max_trials = 20000;
  long trials = 0;
  double confidence = 0.9999;
  double threshold = 0.8639;
  bool strict_path = false;
  bool sensitivity = false;
  std::string csv;
};

int run_crossing(const Global& g, const CrossingArgs& a)
{
  const Clock clock;
  const PairFixture fixture = build_fixture(a.side);
  SampleOptions sample;
  sample.reading = a.strict_path ? EventReading::strict_path : EventReading::conjunction;
  const auto sampler = [&](std::uint64_t k) { return sample_crossing_event(fixture, a.t, RngStream(g.seed, k), sample).success; };

  CertifyOptions opt;
  opt.threshold = a.threshold;
  opt.confidence = a.confidence;
  opt.max_trials = a.trials > 0 ? a.trials : a.max_trials;
  opt.sequential = a.trials <= 0;
  opt.workers = g.workers;
  const Certificate cert = certify_threshold(sampler, opt);

  Report r;
  r.operation = "crossing";
  r.config["command"] = "crossing";
  r.params = {{"t", a.t},
              {"side", a.side},
              {"threshold", a.threshold},
              {"confidence", a.confidence},
              {"mode", opt.sequential ? "sequential" : "fixed-n"},
              {"max_trials", opt.max_trials},
              {"reading", a.strict_path ? "strict-path" : "conjunction"}};
  r.counts = {{"trials", cert.trials}, {"successes", cert.successes}};
  r.ci = cert.lower;
  r.verdict = std::string(to_string(cert.verdict));
  r.extra = {{"phat", static_cast<double>(cert.successes) / static_cast<double>(cert.trials)},
             {"one_sided_upper", cert.upper.upper},
             {"candidate_nodes", fixture.nodes.size()}};

  // The other reading over the same trials, on request or whenever the
  // default reading does not certify.
  if (a.sensitivity || (!a.strict_path && cert.verdict != Verdict::certified)) {
    std::vector<std::uint8_t> strict(static_cast<std::size_t>(cert.trials));
    SampleOptions both;
    both.evaluate_strict = true;
    parallel_for(0, strict.size(), g.workers, [&](std::size_t k) {
      strict[k] = *sample_crossing_event(fixture, a.t, RngStream(g.seed, k), both).strict_success;
    });
    long s = 0;
    for (auto v : strict) s += v;
    const double ps = static_cast<double>(s) / static_cast<double>(cert.trials);
    r.extra["strict_path_successes"] = s;
    r.extra["strict_path_phat"] = ps;
    r.extra["strict_path_delta"] = r.extra["phat"].get<double>() - ps;
  }

  if (!a.csv.empty()) {
    std::ostringstream os;
    os << "trial,success\n";
    for (std::size_t k = 0; k < cert.outcomes.size(); ++k) os << k << ',' << int(cert.outcomes[k]) << '\n';
    write_text(a.csv, os.str());
  }
  emit(g, r, clock);
  switch (cert.verdict) {
    case Verdict::certified: return 0;
    case Verdict::refuted: return 1;
    case Verdict::inconclusive: return 2;
  }
  return 2;
}

// ---------------------------------------------------------------------------

struct CriticalArgs {
  std::string mode = "lambda";
  std::string boxes = "20,40";
  long trials = 0;
  double confidence = 0.9999;
  double radius = 0.5;
  double lambda_min = 0.1;
  double lambda_max = 10.0;
  double t = 0.0;
  double box = 200.0;
  double r_min = 0.05;
  double r_max = 1.0;
  std::string csv;
};

Json box_json(const BoxEstimate& b)
{
  return {{"box_side", b.box_side}, {"point", b.point}, {"lo", b.lo}, {"hi", b.hi}};
}

int run_critical(const Global& g, const CriticalArgs& a)
{
  const Clock clock;
  Report r;
  r.operation = "critical";
  r.config["command"] = "critical";
  CriticalEstimate est;
  try {
    if (a.mode == "lambda") {
      LambdaSearch s;
      s.radius = a.radius;
      s.box_sides = parse_list(a.boxes);
      s.trials = a.trials > 0 ? static_cast<std::size_t>(a.trials) : 1000;
      s.confidence = a.confidence;
      s.lambda_min = a.lambda_min;
      s.lambda_max = a.lambda_max;
      s.seed = g.seed;
      s.workers = g.workers;
      r.params = {{"mode", "lambda"},         {"radius", s.radius},         {"boxes", s.box_sides},
                  {"trials", s.trials},       {"confidence", s.confidence}, {"lambda_min", s.lambda_min},
                  {"lambda_max", s.lambda_max}};
      est = estimate_lambda_c(s);
    } else if (a.mode == "radius") {
      RadiusSearch s;
      s.t = a.t;
      s.box_side = a.box;
      s.trials = a.trials > 0 ? static_cast<std::size_t>(a.trials) : 400;
      s.confidence = a.confidence;
      s.r_min = a.r_min;
      s.r_max = a.r_max;
      s.seed = g.seed;
      s.workers = g.workers;
      r.params = {{"mode", "radius"},     {"t", s.t},         {"box", s.box_side}, {"trials", s.trials},
                  {"confidence", s.confidence}, {"r_min", s.r_min}, {"r_max", s.r_max}};
      est = estimate_r_c_of_t(s);
    } else {
      throw CLI::ValidationError("--mode", "must be lambda or radius");
    }
  } catch (const std::runtime_error& e) {
    r.verdict = "bracket-failure";
    r.extra = {{"error", e.what()}};
    emit(g, r, clock);
    return 2;
  }

  const BoxEstimate& last = est.per_box.back();
  const long n = static_cast<long>(last.thresholds.size());
  r.counts = {{"trials_per_probe", est.trials_per_probe}, {"boxes", est.per_box.size()}};
  r.verdict = est.sign_ok ? "bracketed" : "bracketed-sign-check-failed";
  Json boxes = Json::array();
  for (const auto& b : est.per_box) boxes.push_back(box_json(b));
  r.extra = {{"parameter", est.parameter},
             {"point", est.point},
             {"lo", est.lo},
             {"hi", est.hi},
             {"confidence", est.confidence},
             {"drift", est.drift},
             {"per_box", boxes},
             {"recheck", {{"lo_phat", est.recheck_lo.phat},
                          {"hi_phat", est.recheck_hi.phat},
                          {"trials", est.recheck_lo.trials},
                          {"sign_ok", est.sign_ok}}}};
  const ProbeRow mid = last.probe(est.point);
  r.ci = clopper_pearson(mid.successes, n, 0.95);

  if (!a.csv.empty()) {
    std::vector<ProbeRow> rows;
    const double w = std::max(est.hi - est.lo, 1e-3 * std::max(1.0, std::abs(est.point)));
    for (int k = 0; k <= 20; ++k) rows.push_back(last.probe(est.lo - w + k * (3.0 * w / 20.0)));
    std::ostringstream os;
    write_probe_csv(os, rows);
    write_text(a.csv, os.str());
  }
  emit(g, r, clock);
  return 0;
}

// ---------------------------------------------------------------------------

struct LabArgs {
  std::string experiment;
  double delta = kUnset;
  std::string deltas = "0.25,0.09,0.04";
  double t = kUnset;
  long trials = -1;
  int m = 3;
  double epsilon = 0.01;
  double side = kUnset;
  double k = 0.5;
  double p = 0.9;
  int cols = 100;
  int rows = 100;
  long seeds = -1;
  double window = 60.0;
  double c = 1.0;
  long samples = 8;
  std::string s_list = "0.001,0.01,0.1";
  std::string shape = "flower";
  std::string points;
};

int run_lab(const Global& g, const LabArgs& a)
{
  const Clock clock;
  Report r;
  r.operation = "lab/" + a.experiment;
  r.config["command"] = "lab";
  r.config["experiment"] = a.experiment;
  const auto trials_or = [&](long fallback) { return static_cast<std::size_t>(a.trials >= 0 ? a.trials : fallback); };
  const unsigned w = g.workers;
  int code = 0;

  if (a.experiment == "neighborhood") {
    const double delta = or_default(a.delta, 0.25);
    const double C = neighborhood_constant(delta);
    const auto size = build_J(delta).size();
    const bool inside = size >= (C - 3) * (C - 3) && size <= 4.0 / 3.0 * C * C;
    r.params = {{"delta", delta}};
    r.counts = {{"cells", size}};
    r.extra = {{"C", C}, {"window_lo", (C - 3) * (C - 3)}, {"window_hi", 4.0 / 3.0 * C * C}};
    r.verdict = inside ? "pass" : "fail";
  } else if (a.experiment == "well-behaved") {
    const DominationParams params(or_default(a.delta, 0.1), or_default(a.t, 100.0));
    const auto wb = well_behaved_probability(params);
    const std::size_t n = trials_or(100000);
    r.params = {{"delta", params.delta}, {"t", params.t}, {"trials", n}};
    r.extra = {{"probability", wb.probability}, {"mu", wb.mu},           {"C", params.C},
               {"neighborhood_size", wb.neighborhood_size}, {"lower_bound", wb.lower_bound},
               {"bound_holds", wb.bound_holds}};
    bool agree = true;
    if (n > 0) {
      const auto mc = well_behaved_monte_carlo(params, n, g.seed, w);
      const double sigma = std::sqrt(wb.probability * (1 - wb.probability) / static_cast<double>(n));
      agree = std::abs(mc.phat() - wb.probability) <= 3 * sigma;
      r.counts = {{"trials", mc.trials}, {"successes", mc.successes}};
      r.ci = clopper_pearson(static_cast<long>(mc.successes), static_cast<long>(mc.trials), 0.95);
      r.extra["monte_carlo"] = mc.phat();
      r.extra["monte_carlo_agrees_3sigma"] = agree;
    }
    r.verdict = wb.bound_holds && agree ? "pass" : "fail";
  } else if (a.experiment == "residual") {
    const double t = or_default(a.t, 1e4);
    const auto deltas = std::isnan(a.delta) ? parse_list(a.deltas) : std::vector<double>{a.delta};
    const auto rows = residual_sweep(deltas, t, static_cast<std::size_t>(a.samples), g.seed);
    Json out = Json::array();
    double sup = 0.0;
    for (const auto& row : rows) {
      out.push_back({{"delta", row.delta}, {"mu", row.mu}, {"max_lambda", row.max_lambda}, {"max_ratio", row.max_ratio}});
      sup = std::max(sup, row.max_ratio);
    }
    r.params = {{"deltas", deltas}, {"t", t}, {"samples", a.samples}, {"c", a.c}};
    r.extra = {{"rows", out}, {"sup_ratio", sup}, {"within_c", sup <= a.c}};
    r.verdict = "reported";
  } else if (a.experiment == "empty-hexagon") {
    const double t = or_default(a.t, 1.0);
    const double side = or_default(a.side, a.k * std::sqrt(t));
    const std::size_t n = trials_or(20000);
    const auto e = empty_hexagon_probability(t, side, n, g.seed, w);
    r.params = {{"t", t}, {"side", side}, {"trials", n}};
    r.counts = {{"trials", e.trials}, {"successes", e.empty}};
    r.ci = clopper_pearson(static_cast<long>(e.empty), static_cast<long>(e.trials), 0.95);
    r.extra = {{"phat", e.phat}, {"poisson_reference", e.reference}, {"sigma", e.sigma}};
    r.verdict = e.consistent ? "pass" : "fail";
  } else if (a.experiment == "path-law") {
    const std::size_t n = trials_or(100000);
    const auto p = path_law_1_over_m_factorial(a.m, a.epsilon, n, g.seed, w);
    r.params = {{"m", a.m}, {"epsilon", a.epsilon}, {"trials", n}};
    r.counts = {{"trials", p.trials}, {"successes", p.successes}};
    r.ci = clopper_pearson(static_cast<long>(p.successes), static_cast<long>(p.trials), 0.95);
    r.extra = {{"phat", p.phat}, {"expected", p.expected}, {"sigma", p.sigma}};
    r.verdict = std::abs(p.phat - p.expected) <= 3 * p.sigma ? "pass" : "fail";
  } else if (a.experiment == "edge-preservation") {
    PointSet V;
    if (!a.points.empty())
      V = load_pointset(a.points);
    else if (a.shape == "pair")
      V = tangent_pair();
    else if (a.shape == "flower")
      V = hexagonal_flower();
    else
      throw CLI::ValidationError("--shape", "must be flower or pair");
    const auto s = parse_list(a.s_list);
    const std::size_t n = trials_or(1000);
    const auto e = monotone_edge_preservation(V, s, n, g.seed);
    r.params = {{"s_list", s}, {"trials", n}, {"shape", a.points.empty() ? a.shape : a.points}};
    r.counts = {{"trials", e.trials}, {"edges", e.edges}, {"preserved", e.preserved}};
    r.extra = {{"frequency", e.frequency}, {"pathwise_violations", e.pathwise_violations}};
    r.verdict = e.pathwise_violations == 0 ? "pass" : "fail";
  } else if (a.experiment == "renormalization") {
    const long seeds = a.seeds >= 0 ? a.seeds : 100;
    std::size_t spans = 0;
    double largest = 0.0;
    for (long s = 0; s < seeds; ++s) {
      const auto d = renormalization_field_demo(a.p, 1.0, a.cols, a.rows, g.seed + static_cast<std::uint64_t>(s));
      spans += d.spans;
      largest += d.largest_fraction;
    }
    r.params = {{"p", a.p}, {"cols", a.cols}, {"rows", a.rows}, {"seeds", seeds}};
    r.counts = {{"seeds", seeds}, {"spanning", spans}};
    r.extra = {{"mean_largest_fraction", seeds ? largest / static_cast<double>(seeds) : 0.0}};
    r.verdict = "reported";
  } else if (a.experiment == "figure2") {
    const double t = or_default(a.t, 0.001);
    const std::size_t seeds = static_cast<std::size_t>(a.seeds >= 0 ? a.seeds : 50);
    const auto f = figure2_crossing(t, a.window, seeds, g.seed, w);
    r.params = {{"t", t}, {"window", a.window}, {"seeds", seeds}};
    r.counts = {{"seeds", f.seeds}, {"crossings", f.crossings}};
    r.extra = {{"crossing_majority", f.majority}};
    r.verdict = f.majority ? "crossing" : "no-crossing";
  } else {
    std::cerr << "unknown experiment '" << a.experiment << "'; valid names:";
    for (const auto& n : kExperiments) std::cerr << ' ' << n;
    std::cerr << '\n';
    return 2;
  }
  if (r.verdict == "fail") code = 1;
  emit(g, r, clock);
  return code;
}

// ---------------------------------------------------------------------------

struct RenderArgs {
  std::string process = "lattice";
  double t = 0.0;
  double size = kUnset;
  double lambda = 1.5;
  double radius = 0.5;
  double side = 50.0;
  double scale = 10.0;
};

int run_render(const Global& g, const RenderArgs& a)
{
  if (g.out.empty() || g.out == "-") throw CLI::ValidationError("--out", "render needs an output .svg path");
  RenderScene scene;
  double scale = a.scale;
  if (a.process == "lattice") {
    const double s = or_default(a.size, 20.0);
    scene = lattice_scene(AABB(0.0, s, 0.0, s), a.t, g.seed);
  } else if (a.process == "poisson") {
    const double s = or_default(a.size, 20.0);
    scene = poisson_scene(AABB(0.0, s, 0.0, s), a.lambda, a.radius, g.seed);
  } else if (a.process == "fixture") {
    scene = fixture_scene(a.side, a.t, g.seed);
    scale = std::min(scale, 4.0);
  } else if (a.process == "figure2") {
    const double s = or_default(a.size, 18.0);
    scene = figure2_scene(AABB(0.0, s, 0.0, s), a.t, g.seed);
  } else {
    throw CLI::ValidationError("--process", "must be lattice, poisson, fixture or figure2");
  }
  write_text(g.out, render_svg(scene, scale));
  return 0;
}

// ---------------------------------------------------------------------------

int run_verify_cmd(const Global& g)
{
  const Clock clock;
  VerifyOptions o;
  o.seed = g.seed;
  o.workers = g.workers;
  const auto checks = run_verify(o);
  std::cout << format_verify_table(checks);
  bool all = true;
  Json rows = Json::array();
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  Report r;
  r.operation = "verify";
  r.config["command"] = "verify";
  r.counts = {{"checks", checks.size()},
              {"passed", std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; })}};
  r.verdict = all ? "pass" : "fail";
  r.extra = {{"checks", rows}};
  if (!g.out.empty() && g.out != "-") emit(g, r, clock);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Brownian-perturbed ball-packing percolation experiments", "percopack"};
  app.set_version_flag("--version", std::string("percopack ") + PERCOPACK_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out", g.out, "report path (default stdout; SVG path for render)");
  app.add_option("--config", g.config, "JSON file of flag values; command-line flags take precedence");
  app.add_flag("--timing", g.timing, "add wall_time to reports");

  CrossingArgs ca;
  auto* crossing = app.add_subcommand("crossing", "certify the hexagon-pair crossing probability against a threshold");
  crossing->add_option("--t", ca.t, "time")->capture_default_str();
  crossing->add_option("--side", ca.side, "hexagon side")->capture_default_str();
  crossing->add_option("--max-trials", ca.max_trials, "trial cap for sequential stopping")->capture_default_str();
  crossing->add_option("--trials", ca.trials, "run exactly this many trials and decide once");
  crossing->add_option("--confidence", ca.confidence, "one-sided confidence")->capture_default_str();
  crossing->add_option("--threshold", ca.threshold)->capture_default_str();
  crossing->add_flag("--strict-path", ca.strict_path, "require one path that crosses at both times");
  crossing->add_flag("--sensitivity", ca.sensitivity, "also evaluate the strict-path reading");
  crossing->add_option("--csv", ca.csv, "per-trial outcome CSV");

  CriticalArgs cr;
  auto* critical = app.add_subcommand("critical", "estimate a critical intensity or radius");
  critical->add_option("--mode", cr.mode, "lambda | radius")->capture_default_str();
  critical->add_option("--boxes", cr.boxes, "box sides (lambda mode)")->capture_default_str();
  critical->add_option("--trials", cr.trials, "trials per box (default 1000 lambda, 400 radius)");
  critical->add_option("--confidence", cr.confidence)->capture_default_str();
  critical->add_option("--radius", cr.radius, "ball radius (lambda mode)")->capture_default_str();
  critical->add_option("--lambda-min", cr.lambda_min)->capture_default_str();
  critical->add_option("--lambda-max", cr.lambda_max)->capture_default_str();
  critical->add_option("--t", cr.t, "time (radius mode)")->capture_default_str();
  critical->add_option("--box", cr.box, "box side (radius mode)")->capture_default_str();
  critical->add_option("--r-min", cr.r_min)->capture_default_str();
  critical->add_option("--r-max", cr.r_max)->capture_default_str();
  critical->add_option("--csv", cr.csv, "probe sweep CSV for the largest box");

  LabArgs la;
  auto* lab = app.add_subcommand("lab", "domination and coupling experiments");
  lab->add_option("experiment", la.experiment, "experiment name")->required();
  lab->add_option("--delta", la.delta);
  lab->add_option("--deltas", la.deltas, "delta sweep (residual)")->capture_default_str();
  lab->add_option("--t", la.t);
  lab->add_option("--trials", la.trials);
  lab->add_option("--m", la.m)->capture_default_str();
  lab->add_option("--epsilon", la.epsilon)->capture_default_str();
  lab->add_option("--side", la.side, "hexagon side (empty-hexagon)");
  lab->add_option("--k", la.k, "hexagon side as a multiple of sqrt(t)")->capture_default_str();
  lab->add_option("--p", la.p)->capture_default_str();
  lab->add_option("--cols", la.cols)->capture_default_str();
  lab->add_option("--rows", la.rows)->capture_default_str();
  lab->add_option("--seeds", la.seeds);
  lab->add_option("--window", la.window)->capture_default_str();
  lab->add_option("--c", la.c)->capture_default_str();
  lab->add_option("--samples", la.samples)->capture_default_str();
  lab->add_option("--s-list", la.s_list)->capture_default_str();
  lab->add_option("--shape", la.shape, "flower | pair")->capture_default_str();
  lab->add_option("--points", la.points, "point set file (.csv or .json)");

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "draw a configuration as SVG");
  render->add_option("--process", ra.process, "lattice | poisson | fixture | figure2")->capture_default_str();
  render->add_option("--t", ra.t)->capture_default_str();
  render->add_option("--size", ra.size, "window side");
  render->add_option("--lambda", ra.lambda)->capture_default_str();
  render->add_option("--radius", ra.radius)->capture_default_str();
  render->add_option("--side", ra.side)->capture_default_str();
  render->add_option("--scale", ra.scale, "pixels per unit")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the property battery");

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(args, {"crossing", "critical", "lab", "render", "verify"});
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  try {
    if (crossing->parsed()) return run_crossing(g, ca);
    if (critical->parsed()) return run_critical(g, cr);
    if (lab->parsed()) return run_lab(g, la);
    if (render->parsed()) return run_render(g, ra);
    if (verify->parsed()) return run_verify_cmd(g);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
