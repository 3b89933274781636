#include "percopack/pointproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace percopack {

namespace {

Point uniform_in_box(const AABB& b, RngStream& rng)
{
  const double x = rng.uniform(b.xmin, b.xmax);
  const double y = rng.uniform(b.ymin, b.ymax);
  return {x, y};
}

Point uniform_in_hexagon(const Hexagon& h, RngStream& rng)
{
  const AABB box = h.bounding_box();
  for (;;) {
    const Point p = uniform_in_box(box, rng);
    if (h.contains(p)) return p;
  }
}

}  // namespace

PointSet::PointSet(std::vector<Point> pts, double r, double t)
    : points(std::move(pts)), multiplicity(points.size(), 1), radius(r), time_label(t)
{
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("PointSet radius must be positive");
}

long PointSet::total_multiplicity() const
{
  long total = 0;
  for (int m : multiplicity) total += m;
  return total;
}

void PointSet::push_back(const Point& p, int mult)
{
  points.push_back(p);
  multiplicity.push_back(mult);
}

void PointSet::validate() const
{
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("PointSet radius must be positive");
  if (multiplicity.size() != points.size()) throw std::invalid_argument("PointSet multiplicity size mismatch");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!points[k].allFinite()) throw std::invalid_argument("PointSet contains a non-finite point");
    if (multiplicity[k] < 1) throw std::invalid_argument("PointSet multiplicity must be >= 1");
  }
}

PointSet brownian_displace(const PointSet& points, double t, RngStream& rng)
{
  if (!(t >= 0.0)) throw std::invalid_argument("brownian_displace: negative time");
  if (t == 0.0) {
    PointSet out = points;
    return out;
  }
  const double sigma = std::sqrt(t);
  PointSet out;
  out.radius = points.radius;
  out.time_label = points.time_label + t;
  out.points.reserve(static_cast<std::size_t>(points.total_multiplicity()));
  for (std::size_t k = 0; k < points.size(); ++k)
    for (int m = 0; m < points.multiplicity[k]; ++m) out.push_back(points.points[k] + sigma * rng.normal_pair());
  return out;
}

PointSet sample_poisson_pp(const Region& region, double lambda, RngStream& rng, double radius)
{
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("sample_poisson_pp: negative intensity");
  const double area = region_area(region);
  if (!(area > 0.0) || !std::isfinite(area)) throw std::invalid_argument("sample_poisson_pp: region must be finite");
  PointSet out;
  out.radius = radius;
  const long count = rng.poisson(lambda * area);
  out.points.reserve(static_cast<std::size_t>(count));
  out.multiplicity.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    const Point p = std::visit(
        [&](const auto& r) -> Point {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, AABB>) {
            return uniform_in_box(r, rng);
          } else if constexpr (std::is_same_v<R, Hexagon>) {
            return uniform_in_hexagon(r, rng);
          } else {
            double pick = rng.uniform() * r.area();
            for (const auto& h : r.cells) {
              if (pick < h.area()) return uniform_in_hexagon(h, rng);
              pick -= h.area();
            }
            return uniform_in_hexagon(r.cells.back(), rng);
          }
        },
        region);
    out.push_back(p);
  }
  return out;
}

std::size_t SiteField::open_count() const
{
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const SiteCell& c) { return c.open; }));
}

long SiteField::find(const HexCell& c) const
{
  const auto it = std::lower_bound(cells.begin(), cells.end(), c,
                                   [](const SiteCell& a, const HexCell& key) { return a.cell < key; });
  if (it == cells.end() || it->cell != c) return -1;
  return static_cast<long>(it - cells.begin());
}

SiteField sample_site_field(double p, double cell_side, const AABB& window, RngStream& rng)
{
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_site_field: p outside [0, 1]");
  if (!(window.xmin < window.xmax && window.ymin < window.ymax)) throw std::invalid_argument("degenerate window");
  const HexTessellation tess(cell_side);
  SiteField field;
  field.p = p;
  field.cell_side = cell_side;

  int qmin = 0, qmax = 0, rmin = 0, rmax = 0;
  bool first = true;
  for (const Point& corner : {Point{window.xmin, window.ymin}, Point{window.xmin, window.ymax},
                              Point{window.xmax, window.ymin}, Point{window.xmax, window.ymax}}) {
    const HexCell c = tess.locate(corner);
    qmin = first ? c.q : std::min(qmin, c.q);
    qmax = first ? c.q : std::max(qmax, c.q);
    rmin = first ? c.r : std::min(rmin, c.r);
    rmax = first ? c.r : std::max(rmax, c.r);
    first = false;
  }
  // r ranges over a sheared band, so widen by the q extent.
  const int span = qmax - qmin + 2;
  for (int q = qmin - 1; q <= qmax + 1; ++q)
    for (int r = rmin - span; r <= rmax + span; ++r)
      if (window.contains(tess.center({q, r}))) field.cells.push_back({{q, r}, false});
  for (auto& c : field.cells) c.open = rng.bernoulli(p);
  return field;
}

std::vector<long> poisson_marks(const PointSet& points, double mu, RngStream& rng)
{
  if (!(mu >= 0.0)) throw std::invalid_argument("poisson_marks: negative mean");
  std::vector<long> marks(points.size());
  for (auto& m : marks) m = rng.poisson(mu);
  return marks;
}

std::vector<Point> brownian_scaling_couple(const std::vector<Point>& displacements_at_sprime, double s, double s_prime)
{
  if (!(s >= 0.0) || !(s_prime > 0.0) || s > s_prime)
    throw std::invalid_argument("brownian_scaling_couple: need 0 <= s <= s' and s' > 0");
  const double factor = std::sqrt(s / s_prime);
  std::vector<Point> out;
  out.reserve(displacements_at_sprime.size());
  for (const auto& d : displacements_at_sprime) out.push_back(factor * d);
  return out;
}

// Solid sites on a 1.5-spaced 3x3 grid; singles at the midpoints between
// grid neighbors, at the four face centers, and two horizontal arms.
const std::array<TileSite, 27> kFigure2Tile{{
    {1.5, 1.5, 14}, {3.0, 1.5, 14}, {4.5, 1.5, 14},
    {1.5, 3.0, 14}, {3.0, 3.0, 14}, {4.5, 3.0, 14},
    {1.5, 4.5, 14}, {3.0, 4.5, 14}, {4.5, 4.5, 14},
    {2.25, 1.5, 1}, {3.75, 1.5, 1}, {2.25, 3.0, 1}, {3.75, 3.0, 1}, {2.25, 4.5, 1}, {3.75, 4.5, 1},
    {1.5, 2.25, 1}, {1.5, 3.75, 1}, {3.0, 2.25, 1}, {3.0, 3.75, 1}, {4.5, 2.25, 1}, {4.5, 3.75, 1},
    {2.25, 2.25, 1}, {3.75, 2.25, 1}, {2.25, 3.75, 1}, {3.75, 3.75, 1},
    {0.75, 3.0, 1}, {5.25, 3.0, 1},
}};

PointSet figure2_configuration(const AABB& window)
{
  const auto aligned = [](double v) { return std::isfinite(v) && std::fmod(v, kFigure2Period) == 0.0; };
  if (!aligned(window.xmin) || !aligned(window.xmax) || !aligned(window.ymin) || !aligned(window.ymax) ||
      !(window.xmin < window.xmax) || !(window.ymin < window.ymax))
    throw std::invalid_argument("figure2_configuration: window must be aligned to the period-6 tiling");
  PointSet out;
  const auto nx = static_cast<int>(window.width() / kFigure2Period);
  const auto ny = static_cast<int>(window.height() / kFigure2Period);
  for (int ty = 0; ty < ny; ++ty)
    for (int tx = 0; tx < nx; ++tx)
      for (const auto& s : kFigure2Tile)
        out.push_back({window.xmin + tx * kFigure2Period + s.x, window.ymin + ty * kFigure2Period + s.y},
                      s.multiplicity);
  return out;
}

PointSet perturbed_tri_lattice(const AABB& window, double t, const RngStream& rng, double radius)
{
  if (!(t >= 0.0)) throw std::invalid_argument("perturbed_tri_lattice: negative time");
  const double sigma = std::sqrt(t);
  PointSet out;
  out.radius = radius;
  out.time_label = t;
  for (const auto& k : tri_lattice_indices_in(Region{window})) {
    Point p = tri_lattice_node(k);
    if (t > 0.0) p += sigma * rng.keyed_normal_pair(lattice_key(k.i, k.j));
    out.push_back(p);
  }
  return out;
}

}  // namespace percopack
