#include "percopack/domination_lab.hpp"

#include "percopack/cluster.hpp"
#include "percopack/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace percopack {

namespace {

// Flat-top hexagon vertices in half-side units (x) and sqrt(3)/2-side units
// (y); a cell center (q, r) sits at (3q, 2r + q) in the same units. Squared
// distances in side units are then (X^2 + 3 Y^2) / 4 with integer X, Y.
constexpr int kVertexX[6] = {2, 1, -1, -2, -1, 1};
constexpr int kVertexY[6] = {0, 1, 1, 0, -1, -1};

std::int64_t sup_distance_units(const HexCell& offset)
{
  const std::int64_t cx = 3LL * offset.q;
  const std::int64_t cy = 2LL * offset.r + offset.q;
  std::int64_t best = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const std::int64_t X = cx + kVertexX[a] - kVertexX[b];
      const std::int64_t Y = cy + kVertexY[a] - kVertexY[b];
      best = std::max(best, X * X + 3 * Y * Y);
    }
  return best;
}

// 4 C^2 in the units above.
double neighborhood_bound_units(double delta) { return 64.0 / (delta * delta * delta); }

void require_delta(double delta)
{
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
}

Point uniform_in_hexagon(const Hexagon& h, RngStream& rng)
{
  const AABB box = h.bounding_box();
  for (;;) {
    const Point p{rng.uniform(box.xmin, box.xmax), rng.uniform(box.ymin, box.ymax)};
    if (h.contains(p)) return p;
  }
}

}  // namespace

DominationParams::DominationParams(double delta_, double t_, double p_) : delta(delta_), t(t_), p(p_)
{
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("DominationParams: delta must lie in (0, 1)");
  if (!(t > 0.0)) throw std::invalid_argument("DominationParams: t must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("DominationParams: p outside [0, 1]");
  C = neighborhood_constant(delta);
}

double DominationParams::cell_side() const { return delta * std::sqrt(t); }

double neighborhood_constant(double delta) { return 4.0 * std::pow(delta, -1.5); }

std::vector<HexCell> build_J(double delta)
{
  require_delta(delta);
  const double bound = neighborhood_bound_units(delta);
  const double C = neighborhood_constant(delta);
  // Center distance (side units) exceeds sup distance minus 2; column q sits
  // 1.5|q| away horizontally.
  const int qmax = static_cast<int>(std::ceil(C / 1.5)) + 2;
  const int ymax = static_cast<int>(std::ceil(2.0 * (C + 2.0) / kSqrt3)) + 2;
  std::vector<HexCell> out;
  for (int q = -qmax; q <= qmax; ++q) {
    const int rlo = static_cast<int>(std::floor((-ymax - q) / 2.0));
    const int rhi = static_cast<int>(std::ceil((ymax - q) / 2.0));
    for (int r = rlo; r <= rhi; ++r)
      if (static_cast<double>(sup_distance_units({q, r})) <= bound) out.push_back({q, r});
  }
  return out;
}

double heat_kernel(double squared_distance, double t)
{
  return std::exp(-squared_distance / (2.0 * t)) / (2.0 * kPi * t);
}

HexKernel::HexKernel(const DominationParams& params)
    : side_(params.cell_side()), t_(params.t), cells_(build_J(params.delta))
{
  values_.reserve(cells_.size());
  for (const auto& c : cells_) {
    values_.push_back(phi(c));
    normalizer_ += values_.back();
  }
  if (!(normalizer_ > 0.0)) throw std::runtime_error("HexKernel: normalizer underflowed");
}

double HexKernel::sup_distance(const HexCell& offset) const
{
  return side_ * 0.5 * std::sqrt(static_cast<double>(sup_distance_units(offset)));
}

double HexKernel::phi(const HexCell& offset) const
{
  const std::int64_t units = sup_distance_units(offset);
  const double delta = side_ / std::sqrt(t_);
  if (static_cast<double>(units) > neighborhood_bound_units(delta)) return 0.0;
  return heat_kernel(side_ * side_ * static_cast<double>(units) / 4.0, t_);
}

WellBehaved well_behaved_probability(const DominationParams& params)
{
  const HexKernel kernel(params);
  const double cell_area = 1.5 * kSqrt3 * params.delta * params.delta * params.t;
  WellBehaved out;
  out.probability = cell_area * kernel.normalizer();
  if (!(out.probability > 0.0 && out.probability <= 1.0))
    throw std::runtime_error("well_behaved_probability: sum left (0, 1]");
  out.mu = -std::log(out.probability);
  out.neighborhood_size = kernel.cells().size();
  out.lower_bound = 1.0 - 5.0 * params.delta;
  out.bound_holds = out.probability >= out.lower_bound;
  return out;
}

MonteCarloCount well_behaved_monte_carlo(const DominationParams& params, std::size_t trials, std::uint64_t seed,
                                         unsigned workers)
{
  const HexKernel kernel(params);
  const HexTessellation tess(params.cell_side());
  const Hexagon home = tess.cell({0, 0});
  const double sigma = std::sqrt(params.t);
  std::vector<std::uint8_t> accepted(trials);
  parallel_for(0, trials, workers, [&](std::size_t k) {
    RngStream rng(seed, k);
    const Point x = uniform_in_hexagon(home, rng);
    const Point y = x + sigma * rng.normal_pair();
    const HexCell c = tess.locate(y);
    const double phi = kernel.phi(c);
    const double f = heat_kernel((y - x).squaredNorm(), params.t);
    accepted[k] = rng.uniform() * f < phi;
  });
  MonteCarloCount out;
  out.trials = trials;
  for (auto a : accepted) out.successes += a;
  return out;
}

ResidualIntensity residual_intensity(const DominationParams& params, const Point& x, double truncation_radius,
                                     double c)
{
  const double sqrt_t = std::sqrt(params.t);
  if (!(truncation_radius >= 6.0 * sqrt_t))
    throw std::invalid_argument("residual_intensity: truncation radius below 6 sqrt(t)");
  const WellBehaved wb = well_behaved_probability(params);
  if (wb.mu > 1.0) throw std::domain_error("residual_intensity: mu > 1, residual bound does not apply");
  const HexKernel kernel(params);
  const HexTessellation tess(params.cell_side());
  const HexCell home = tess.locate(x);

  const double R = truncation_radius;
  const double R2 = R * R;
  const double row = kSqrt3 / 2.0;
  double sum = 0.0;
  std::size_t nodes = 0;
  const int jlo = static_cast<int>(std::floor((x.y() - R) / row));
  const int jhi = static_cast<int>(std::ceil((x.y() + R) / row));
  for (int j = jlo; j <= jhi; ++j) {
    const double dy = j * row - x.y();
    if (dy * dy > R2) continue;
    const double w = std::sqrt(R2 - dy * dy);
    const int ilo = static_cast<int>(std::floor(x.x() - w - 0.5 * j));
    const int ihi = static_cast<int>(std::ceil(x.x() + w - 0.5 * j));
    for (int i = ilo; i <= ihi; ++i) {
      const Point v = tri_lattice_node({i, j});
      const double d2 = (v - x).squaredNorm();
      if (d2 > R2) continue;
      const HexCell cv = tess.locate(v);
      const double f = heat_kernel(d2, params.t);
      const double phi = kernel.phi({cv.q - home.q, cv.r - home.r});
      const double g = f - phi;
      if (g < -1e-12 * f) throw std::logic_error("residual_intensity: kernel exceeds the heat kernel");
      sum += std::max(g, 0.0);
      ++nodes;
    }
  }

  const double mu = wb.mu;
  const double scale = mu < 1e-12 ? 1.0 : mu / -std::expm1(-mu);
  const double Rp = R - 2.0 / kSqrt3;
  ResidualIntensity out;
  out.x = x;
  out.mu = mu;
  out.truncation_radius = R;
  out.nodes = nodes;
  out.tail_bound = scale * (2.0 / kSqrt3) * std::exp(-Rp * Rp / (2.0 * params.t)) * (1.0 + 1.0 / (kSqrt3 * Rp));
  out.lambda = scale * sum + out.tail_bound;
  out.ratio = out.lambda / std::sqrt(params.delta);
  out.c = c;
  out.within = out.lambda <= c * std::sqrt(params.delta);
  return out;
}

std::vector<ResidualSweepRow> residual_sweep(const std::vector<double>& deltas, double t, std::size_t samples,
                                             std::uint64_t seed)
{
  std::vector<ResidualSweepRow> rows;
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    const DominationParams params(deltas[d], t);
    const HexTessellation tess(params.cell_side());
    const Hexagon home = tess.cell(tess.locate(Point::Zero()));
    ResidualSweepRow row;
    row.delta = deltas[d];
    for (std::size_t k = 0; k < samples; ++k) {
      RngStream rng(seed, (static_cast<std::uint64_t>(d) << 32) | k);
      const auto res = residual_intensity(params, uniform_in_hexagon(home, rng), 6.0 * std::sqrt(t));
      row.mu = res.mu;
      row.max_lambda = std::max(row.max_lambda, res.lambda);
      row.max_ratio = std::max(row.max_ratio, res.ratio);
    }
    rows.push_back(row);
  }
  return rows;
}

EmptyHexagon empty_hexagon_probability(double t, double side, std::size_t trials, std::uint64_t seed,
                                       unsigned workers, const Point& center)
{
  if (!(t >= 0.0)) throw std::invalid_argument("empty_hexagon_probability: negative time");
  if (!(side > 0.0)) throw std::invalid_argument("empty_hexagon_probability: side must be positive");
  if (trials == 0) throw std::invalid_argument("empty_hexagon_probability: need trials");
  const Hexagon S{center, side};
  const AABB window = S.bounding_box().padded(6.0 * std::sqrt(t));
  std::vector<std::uint8_t> empty(trials);
  parallel_for(0, trials, workers, [&](std::size_t k) {
    const PointSet pts = perturbed_tri_lattice(window, t, RngStream(seed, k));
    empty[k] = std::none_of(pts.points.begin(), pts.points.end(), [&](const Point& p) { return S.contains(p); });
  });
  EmptyHexagon out;
  out.trials = trials;
  for (auto e : empty) out.empty += e;
  out.phat = static_cast<double>(out.empty) / static_cast<double>(trials);
  out.reference = std::exp(-(2.0 / kSqrt3) * S.area());
  out.sigma = std::sqrt(out.reference * (1.0 - out.reference) / static_cast<double>(trials));
  out.consistent = out.phat <= out.reference + 3.0 * out.sigma;
  return out;
}

PathLaw path_law_1_over_m_factorial(int m, double epsilon, std::size_t trials, std::uint64_t seed, unsigned workers)
{
  if (m < 1) throw std::invalid_argument("path_law: m must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("path_law: epsilon must be positive");
  if (trials == 0) throw std::invalid_argument("path_law: need trials");
  const double sigma = std::sqrt(epsilon);
  std::vector<std::uint8_t> hit(trials);
  parallel_for(0, trials, workers, [&](std::size_t k) {
    RngStream rng(seed, k);
    const auto good_displacement = [&] {
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const double z = sigma * rng.normal();
        if (std::abs(z) < 0.5) return z;
      }
      throw std::runtime_error("path_law: rejection sampling exhausted 1000 attempts");
    };
    bool path = true;
    double prev = good_displacement();
    for (int i = 1; i < m; ++i) {
      const double z = good_displacement();
      if (std::abs(1.0 + z - prev) > 1.0) path = false;
      prev = z;
    }
    hit[k] = path;
  });
  PathLaw out;
  out.m = m;
  out.epsilon = epsilon;
  out.trials = trials;
  for (auto h : hit) out.successes += h;
  out.phat = static_cast<double>(out.successes) / static_cast<double>(trials);
  out.expected = 1.0 / std::tgamma(m + 1.0);
  out.sigma = std::sqrt(out.expected * (1.0 - out.expected) / static_cast<double>(trials));
  return out;
}

EdgePreservation monotone_edge_preservation(const PointSet& V, const std::vector<double>& s_list,
                                            std::size_t trials, std::uint64_t seed)
{
  if (s_list.empty() || s_list.front() < 0.0 || !(s_list.back() > 0.0))
    throw std::invalid_argument("monotone_edge_preservation: need nonnegative times with a positive maximum");
  for (std::size_t k = 1; k < s_list.size(); ++k)
    if (!(s_list[k] > s_list[k - 1]))
      throw std::invalid_argument("monotone_edge_preservation: s_list must be increasing");

  std::vector<Point> pts;
  for (std::size_t k = 0; k < V.size(); ++k)
    for (int m = 0; m < V.multiplicity[k]; ++m) pts.push_back(V.points[k]);
  if (pts.empty()) throw std::invalid_argument("monotone_edge_preservation: empty configuration");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  const SpatialGrid grid(pts, 2.0 * V.radius * (1.0 + 1e-9));
  grid.for_each_close_pair(2.0 * V.radius, [&](std::uint32_t i, std::uint32_t j) { edges.emplace_back(i, j); });
  std::sort(edges.begin(), edges.end());
  if (IntersectionGraph(pts, V.radius).component_count() != 1)
    throw std::invalid_argument("monotone_edge_preservation: ball graph of V is disconnected");

  const double s_max = s_list.back();
  const double reach2 = contact_reach2(2.0 * V.radius);
  EdgePreservation out;
  out.s_list = s_list;
  out.trials = trials;
  out.edges = edges.size();
  out.preserved.assign(s_list.size(), 0);
  out.per_trial.assign(trials, std::vector<std::uint8_t>(s_list.size(), 0));
  for (std::size_t k = 0; k < trials; ++k) {
    RngStream rng(seed, k);
    std::vector<Point> disp(pts.size());
    for (auto& d : disp) d = std::sqrt(s_max) * rng.normal_pair();
    auto& row = out.per_trial[k];
    for (std::size_t si = 0; si < s_list.size(); ++si) {
      const auto moved = brownian_scaling_couple(disp, s_list[si], s_max);
      row[si] = std::all_of(edges.begin(), edges.end(), [&](const auto& e) {
        return (pts[e.first] + moved[e.first] - pts[e.second] - moved[e.second]).squaredNorm() <= reach2;
      });
      out.preserved[si] += row[si];
    }
    for (std::size_t si = 1; si < s_list.size(); ++si)
      if (row[si] > row[si - 1]) {
        ++out.pathwise_violations;
        break;
      }
  }
  for (auto c : out.preserved) out.frequency.push_back(static_cast<double>(c) / static_cast<double>(trials));
  return out;
}

PointSet hexagonal_flower()
{
  PointSet out;
  out.push_back(Point::Zero());
  for (const auto& d : kHexNeighbors) out.push_back(tri_lattice_node({d.q, d.r}));
  return out;
}

PointSet tangent_pair() { return PointSet({Point{0.0, 0.0}, Point{1.0, 0.0}}); }

RenormalizationSummary renormalization_field_demo(double p, double cell_side, int cols, int rows,
                                                  std::uint64_t seed)
{
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("renormalization_field_demo: p outside [0, 1]");
  if (cols < 1 || rows < 1) throw std::invalid_argument("renormalization_field_demo: empty window");
  const HexTessellation tess(cell_side);
  const Point c0 = tess.center({0, 0});
  const double s = cell_side;
  const AABB window(c0.x() - 0.5 * s, c0.x() + 1.5 * s * (cols - 1) + 0.5 * s, c0.y() - 0.5 * s,
                    c0.y() + kSqrt3 * s * rows - 0.5 * s);
  RngStream rng(seed, 0);
  const SiteField field = sample_site_field(p, cell_side, window, rng);

  DisjointSets sets(field.cells.size());
  for (std::size_t k = 0; k < field.cells.size(); ++k) {
    if (!field.cells[k].open) continue;
    for (const auto& d : kHexNeighbors) {
      const long n = field.find({field.cells[k].cell.q + d.q, field.cells[k].cell.r + d.r});
      if (n >= 0 && field.cells[static_cast<std::size_t>(n)].open)
        sets.unite(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(n));
    }
  }

  RenormalizationSummary out;
  out.p = p;
  out.cells = field.cells.size();
  out.open = field.open_count();
  if (field.cells.empty()) return out;
  int qmin = field.cells.front().cell.q;
  int qmax = field.cells.front().cell.q;
  for (const auto& c : field.cells) {
    qmin = std::min(qmin, c.cell.q);
    qmax = std::max(qmax, c.cell.q);
  }
  std::vector<std::size_t> size(field.cells.size(), 0);
  std::vector<std::uint8_t> touches(field.cells.size(), 0);
  for (std::size_t k = 0; k < field.cells.size(); ++k) {
    if (!field.cells[k].open) continue;
    const auto root = sets.find(static_cast<std::uint32_t>(k));
    ++size[root];
    if (field.cells[k].cell.q == qmin) touches[root] |= 1;
    if (field.cells[k].cell.q == qmax) touches[root] |= 2;
  }
  std::size_t best = 0;
  for (std::size_t k = 0; k < size.size(); ++k)
    if (size[k] > size[best] || (size[k] == size[best] && touches[k] == 3 && touches[best] != 3)) best = k;
  out.largest = size[best];
  out.largest_fraction = static_cast<double>(out.largest) / static_cast<double>(out.cells);
  out.spans = out.largest > 0 && touches[best] == 3;
  return out;
}

Figure2Outcome figure2_crossing(double t, double window_side, std::size_t seeds, std::uint64_t seed,
                                unsigned workers)
{
  if (!(t >= 0.0)) throw std::invalid_argument("figure2_crossing: negative time");
  if (!(window_side > 0.0) || std::fmod(window_side, kFigure2Period) != 0.0)
    throw std::invalid_argument("figure2_crossing: window side must be a positive multiple of 6");
  const AABB box(0.0, window_side, 0.0, window_side);
  const double pad = kFigure2Period * std::ceil(6.0 * std::sqrt(t) / kFigure2Period);
  const PointSet start = figure2_configuration(box.padded(pad));
  std::vector<std::uint8_t> crossed(seeds);
  parallel_for(0, seeds, workers, [&](std::size_t k) {
    RngStream rng(seed, k);
    crossed[k] = box_crossing(brownian_displace(start, t, rng), box, Direction::horizontal);
  });
  Figure2Outcome out;
  out.t = t;
  out.seeds = seeds;
  for (auto c : crossed) out.crossings += c;
  out.majority = 2 * out.crossings > seeds;
  return out;
}

}  // namespace percopack
