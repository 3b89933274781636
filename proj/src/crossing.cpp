#include "percopack/crossing.hpp"

#include "percopack/cluster.hpp"
#include "percopack/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace percopack {

namespace {

constexpr double kBallRadius = 0.5;
constexpr double kEdgeClearance = 1e-6;

// Signed distance-like gauge to a flat-top hexagon boundary: |value| is a
// lower bound on the distance to the boundary, exact inside.
double boundary_gauge(const Hexagon& h, const Point& p)
{
  const Point d = p - h.center;
  const double a = std::abs(d.y());
  const double b = std::abs(0.5 * kSqrt3 * d.x() + 0.5 * d.y());
  const double c = std::abs(-0.5 * kSqrt3 * d.x() + 0.5 * d.y());
  return std::max({a, b, c}) - h.apothem();
}

std::uint8_t terminal_bits(const PairFixture& f, const Point& p)
{
  const double reach = kBallRadius + 1e-9;
  if (std::abs(boundary_gauge(f.pair.h1, p)) > reach && std::abs(boundary_gauge(f.pair.h2, p)) > reach)
    return 0;
  std::uint8_t bits = 0;
  for (int k = 0; k < 3; ++k) {
    for (const auto& s : f.from[k])
      if (ball_intersects_segment(p, kBallRadius, s)) {
        bits |= static_cast<std::uint8_t>(1u << (2 * k));
        break;
      }
    for (const auto& s : f.to[k])
      if (ball_intersects_segment(p, kBallRadius, s)) {
        bits |= static_cast<std::uint8_t>(1u << (2 * k + 1));
        break;
      }
  }
  return bits;
}

std::array<bool, 3> evaluate_conditions(IntersectionGraph& g, const std::vector<std::uint8_t>& bits)
{
  std::vector<std::uint8_t> root_bits(g.size(), 0);
  for (std::uint32_t i = 0; i < g.size(); ++i)
    if (bits[i] != 0) root_bits[g.find(i)] |= bits[i];
  std::array<bool, 3> out{};
  for (const auto b : root_bits)
    for (int k = 0; k < 3; ++k)
      if (((b >> (2 * k)) & 3u) == 3u) out[k] = true;
  return out;
}

}  // namespace

PairFixture build_fixture(double side) { return build_fixture(side, {0, 0}, {0, -1}); }

PairFixture build_fixture(double side, const HexCell& first, const HexCell& second)
{
  if (!(side > 0.0)) throw std::invalid_argument("build_fixture: side must be positive");
  const HexTessellation tess(side);
  PairFixture f;
  f.side = side;
  f.pair = hex_pair(tess, first, second);
  if (first == HexCell{0, 0} && second == HexCell{0, -1}) f.pair = hex_pair(side);
  f.region = f.pair.as_union();

  using E = PairEdge;
  const auto seg = [&](E e) { return f.pair.edge(e); };
  f.from = {std::vector<Segment>{seg(E::e3)}, {seg(E::e1), seg(E::e2)}, {seg(E::e1p), seg(E::e2p)}};
  f.to = {std::vector<Segment>{seg(E::e3p)}, {seg(E::e4), seg(E::e5)}, {seg(E::e4p), seg(E::e5p)}};

  f.nodes = tri_lattice_indices_in(Region{f.region});
  f.start_positions.reserve(f.nodes.size());
  for (const auto& k : f.nodes) f.start_positions.push_back(tri_lattice_node(k));

  const double clearance2 = kEdgeClearance * kEdgeClearance;
  for (const auto& p : f.start_positions)
    for (int k = 0; k < 6; ++k)
      for (const Hexagon* h : {&f.pair.h1, &f.pair.h2})
        if (squared_distance_to_segment(p, h->edge(k)) <= clearance2)
          throw std::logic_error("build_fixture: lattice node on a cell edge at (" + std::to_string(p.x()) + ", " +
                                 std::to_string(p.y()) + ")");

  f.start_terminals.reserve(f.nodes.size());
  for (const auto& p : f.start_positions) f.start_terminals.push_back(terminal_bits(f, p));

  IntersectionGraph g(f.start_positions, kBallRadius);
  const auto conds = evaluate_conditions(g, f.start_terminals);
  for (int k = 0; k < 3; ++k)
    if (!conds[k])
      throw std::logic_error("build_fixture: unperturbed lattice fails crossing condition " + std::to_string(k + 1));
  return f;
}

CrossingOutcome sample_crossing_event(const PairFixture& f, double t, const RngStream& stream,
                                      const SampleOptions& options)
{
  if (!(t >= 0.0)) throw std::invalid_argument("sample_crossing_event: negative time");
  CrossingOutcome out;
  out.t = t;
  out.seed = stream.master_seed();
  out.stream = stream.stream_index();

  const double sigma = std::sqrt(t);
  const std::size_t n = f.nodes.size();
  std::vector<Point> pts;
  std::vector<std::uint32_t> origin;
  std::vector<std::uint8_t> bits;
  pts.reserve(n);
  origin.reserve(n);
  bits.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Point p = f.start_positions[k];
    if (t > 0.0) p += sigma * stream.keyed_normal_pair(lattice_key(f.nodes[k].i, f.nodes[k].j));
    if (!f.region.contains(p)) continue;
    pts.push_back(p);
    origin.push_back(static_cast<std::uint32_t>(k));
    bits.push_back(terminal_bits(f, p));
  }
  out.nodes_used = pts.size();

  const bool want_strict = options.evaluate_strict || options.reading == EventReading::strict_path;
  if (want_strict) {
    std::vector<std::uint8_t> both(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) both[i] = bits[i] & f.start_terminals[origin[i]];
    IntersectionGraph strict(pts, kBallRadius, 0.0, [&](std::uint32_t i, std::uint32_t j) {
      return balls_adjacent(f.start_positions[origin[i]], f.start_positions[origin[j]], kBallRadius);
    });
    const auto c = evaluate_conditions(strict, both);
    out.strict_success = c[0] && c[1] && c[2];
  }

  IntersectionGraph g(std::move(pts), kBallRadius);
  out.conditions = evaluate_conditions(g, bits);
  const bool weak = out.conditions[0] && out.conditions[1] && out.conditions[2] && out.start_crossing;
  out.success = options.reading == EventReading::conjunction ? weak : *out.strict_success;
  return out;
}

std::vector<Point> fixture_positions(const PairFixture& f, double t, const RngStream& stream)
{
  if (!(t >= 0.0)) throw std::invalid_argument("fixture_positions: negative time");
  const double sigma = std::sqrt(t);
  std::vector<Point> pts;
  pts.reserve(f.nodes.size());
  for (std::size_t k = 0; k < f.nodes.size(); ++k) {
    Point p = f.start_positions[k];
    if (t > 0.0) p += sigma * stream.keyed_normal_pair(lattice_key(f.nodes[k].i, f.nodes[k].j));
    if (f.region.contains(p)) pts.push_back(p);
  }
  return pts;
}

CorrelationEstimate paired_indicator_correlation(const PairFixture& a, const PairFixture& b, double t,
                                                 std::uint64_t master_seed, std::size_t trials, unsigned workers)
{
  std::vector<std::uint8_t> xa(trials), xb(trials);
  parallel_for(0, trials, workers, [&](std::size_t k) {
    const RngStream stream(master_seed, k);
    xa[k] = sample_crossing_event(a, t, stream).success;
    xb[k] = sample_crossing_event(b, t, stream).success;
  });
  CorrelationEstimate est;
  est.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    est.successes_a += xa[k];
    est.successes_b += xb[k];
    est.joint += xa[k] & xb[k];
  }
  const double n = static_cast<double>(trials);
  const double pa = est.successes_a / n;
  const double pb = est.successes_b / n;
  const double cov = est.joint / n - pa * pb;
  const double denom = std::sqrt(pa * (1 - pa) * pb * (1 - pb));
  est.rho = denom > 0.0 ? cov / denom : std::numeric_limits<double>::quiet_NaN();
  return est;
}

CorrelationEstimate one_dependence_check(const PairFixture& a, const PairFixture& b, double t,
                                         std::uint64_t master_seed, std::size_t trials, unsigned workers)
{
  if (a.side != b.side) throw std::invalid_argument("one_dependence_check: fixtures use different tessellations");
  for (const auto& ca : {a.pair.cell1, a.pair.cell2})
    for (const auto& cb : {b.pair.cell1, b.pair.cell2})
      if (ca == cb) throw std::invalid_argument("one_dependence_check: pairs share a hexagon");
  return paired_indicator_correlation(a, b, t, master_seed, trials, workers);
}

}  // namespace percopack
