#include "percopack/cluster.hpp"

#include <stdexcept>
#include <unordered_map>

namespace percopack {

SpatialGrid::SpatialGrid(std::span<const Point> points, double cell_side) : points_(points), cell_(cell_side)
{
  if (!(cell_side > 0.0)) throw std::invalid_argument("SpatialGrid: cell side must be positive");
  const std::size_t n = points.size();
  if (n == 0) {
    start_.assign(2, 0);
    return;
  }
  double xmin = points[0].x(), xmax = xmin, ymin = points[0].y(), ymax = ymin;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  // Sparse sets over a wide extent would make the dense grid huge; coarser
  // cells stay correct because any side >= the query distance works.
  const double area = std::max(xmax - xmin, cell_) * std::max(ymax - ymin, cell_);
  const double budget = 4.0 * static_cast<double>(n) + 64.0;
  if (area / (cell_ * cell_) > budget) cell_ = std::sqrt(area / budget);
  x0_ = xmin;
  y0_ = ymin;
  nx_ = static_cast<int>((xmax - xmin) / cell_) + 1;
  ny_ = static_cast<int>((ymax - ymin) / cell_) + 1;

  cx_.resize(n);
  cy_.resize(n);
  start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    cx_[i] = std::min(nx_ - 1, static_cast<int>((points[i].x() - x0_) / cell_));
    cy_[i] = std::min(ny_ - 1, static_cast<int>((points[i].y() - y0_) / cell_));
    ++start_[static_cast<std::size_t>(cy_[i]) * nx_ + cx_[i] + 1];
  }
  for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
  order_.resize(n);
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::uint32_t i = 0; i < n; ++i) order_[fill[static_cast<std::size_t>(cy_[i]) * nx_ + cx_[i]]++] = i;
}

std::vector<std::uint32_t> IntersectionGraph::component_labels()
{
  std::vector<std::uint32_t> labels(points_.size());
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  for (std::uint32_t i = 0; i < points_.size(); ++i) {
    const auto [it, inserted] = ids.try_emplace(sets_.find(i), static_cast<std::uint32_t>(ids.size()));
    labels[i] = it->second;
  }
  return labels;
}

IntersectionGraph build_graph(const PointSet& points, double cell_side)
{
  return IntersectionGraph(points.points, points.radius, cell_side);
}

namespace {

bool touches_any(const Point& c, double r, std::span<const Segment> segs)
{
  for (const auto& s : segs)
    if (ball_intersects_segment(c, r, s)) return true;
  return false;
}

}  // namespace

bool connects(IntersectionGraph& g, std::span<const Segment> from, std::span<const Segment> to)
{
  if (from.empty() || to.empty()) throw std::invalid_argument("connects: empty terminal set");
  const double r = g.radius();
  std::vector<std::uint8_t> mark(g.size(), 0);
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    const Point& p = g.points()[i];
    std::uint8_t bits = 0;
    if (touches_any(p, r, from)) bits |= 1;
    if (touches_any(p, r, to)) bits |= 2;
    if (bits == 0) continue;
    const std::uint32_t root = g.find(i);
    mark[root] |= bits;
    if (mark[root] == 3) return true;
  }
  return false;
}

bool crossing(const PointSet& points, std::span<const Segment> x1, std::span<const Segment> x2, const Region& x3)
{
  if (x1.empty() || x2.empty()) throw std::invalid_argument("crossing: X1 and X2 must be non-empty");
  std::vector<Point> inside;
  for (const auto& p : points.points)
    if (point_in_region(p, x3)) inside.push_back(p);
  if (inside.empty()) return false;
  IntersectionGraph g(std::move(inside), points.radius);
  return connects(g, x1, x2);
}

bool box_crossing(const PointSet& points, const AABB& box, Direction direction)
{
  const std::array<Segment, 1> from{direction == Direction::horizontal ? box.left() : box.bottom()};
  const std::array<Segment, 1> to{direction == Direction::horizontal ? box.right() : box.top()};
  return crossing(points, from, to, Region{box});
}

std::vector<Point> convex_hull(std::vector<Point> pts)
{
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  const auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_diameter(std::span<const Point> points)
{
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  double best = 0.0;
  if (n <= kDiameterBruteForce) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, (points[i] - points[j]).squaredNorm());
    return std::sqrt(best);
  }
  const std::vector<Point> hull = convex_hull({points.begin(), points.end()});
  const std::size_t h = hull.size();
  if (h < 3) return h == 2 ? (hull[0] - hull[1]).norm() : 0.0;
  // Rotating calipers: for each hull edge advance the antipodal pointer while
  // the triangle area grows, checking both edge endpoints against it.
  const auto area2 = [](const Point& a, const Point& b, const Point& c) {
    return std::abs((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
  };
  std::size_t j = 1;
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t i1 = (i + 1) % h;
    while (area2(hull[i], hull[i1], hull[(j + 1) % h]) > area2(hull[i], hull[i1], hull[j])) j = (j + 1) % h;
    best = std::max({best, (hull[i] - hull[j]).squaredNorm(), (hull[i1] - hull[j]).squaredNorm()});
  }
  return std::sqrt(best);
}

ClusterStats component_stats(const IntersectionGraph& graph, const Region& region)
{
  std::vector<Point> inside;
  for (const auto& p : graph.points())
    if (point_in_region(p, region)) inside.push_back(p);
  ClusterStats stats;
  if (inside.empty()) return stats;
  IntersectionGraph sub(inside, graph.radius());
  const auto labels = sub.component_labels();
  stats.component_count = sub.component_count();
  std::vector<std::vector<Point>> groups(stats.component_count);
  for (std::size_t i = 0; i < inside.size(); ++i) groups[labels[i]].push_back(inside[i]);
  for (const auto& g : groups) {
    stats.sizes.push_back(g.size());
    stats.largest_diameter = std::max(stats.largest_diameter, point_diameter(g));
  }
  std::sort(stats.sizes.begin(), stats.sizes.end(), std::greater<>());
  return stats;
}

double critical_crossing_radius(std::span<const Point> points, const AABB& box, Direction direction, double r_max)
{
  struct Event {
    double r;
    std::uint32_t a;
    std::uint32_t b;  // == a for a terminal event
    std::uint8_t side;
  };
  std::vector<Point> inside;
  for (const auto& p : points)
    if (box.contains(p)) inside.push_back(p);
  const double inf = std::numeric_limits<double>::infinity();
  if (inside.empty()) return inf;

  // Contact at radius r means distance <= r sqrt(1 + slack).
  const double shrink = 1.0 / std::sqrt(1.0 + kContactSlack);
  std::vector<Event> events;
  for (std::uint32_t i = 0; i < inside.size(); ++i) {
    const Point& p = inside[i];
    const double d_start = direction == Direction::horizontal ? p.x() - box.xmin : p.y() - box.ymin;
    const double d_end = direction == Direction::horizontal ? box.xmax - p.x() : box.ymax - p.y();
    if (d_start * shrink <= r_max) events.push_back({d_start * shrink, i, i, 1});
    if (d_end * shrink <= r_max) events.push_back({d_end * shrink, i, i, 2});
  }
  const SpatialGrid grid(inside, 2.0 * r_max * (1.0 + 1e-9));
  grid.for_each_close_pair(2.0 * r_max, [&](std::uint32_t i, std::uint32_t j) {
    events.push_back({0.5 * shrink * (inside[i] - inside[j]).norm(), i, j, 0});
  });
  std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return x.r < y.r; });

  DisjointSets sets(inside.size());
  std::vector<std::uint8_t> flags(inside.size(), 0);
  for (const auto& ev : events) {
    std::uint32_t root;
    if (ev.side != 0) {
      root = sets.find(ev.a);
      flags[root] |= ev.side;
    } else {
      const std::uint32_t ra = sets.find(ev.a);
      const std::uint32_t rb = sets.find(ev.b);
      if (ra == rb) continue;
      const std::uint8_t merged = flags[ra] | flags[rb];
      root = sets.unite(ra, rb);
      flags[root] = merged;
    }
    if (flags[root] == 3) return ev.r;
  }
  return inf;
}

IncrementalCrossing::IncrementalCrossing(const AABB& box, double radius, Direction direction)
    : box_(box), radius_(radius), direction_(direction), cell_(2.0 * radius * (1.0 + 1e-9))
{
  if (!(radius > 0.0)) throw std::invalid_argument("IncrementalCrossing: radius must be positive");
  nx_ = static_cast<int>(box.width() / cell_) + 1;
  ny_ = static_cast<int>(box.height() / cell_) + 1;
  buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
}

bool IncrementalCrossing::insert(const Point& p)
{
  if (crossed_) return true;
  if (!box_.contains(p)) return false;
  const auto id = sets_.push_back();
  points_.push_back(p);
  const double d_start = direction_ == Direction::horizontal ? p.x() - box_.xmin : p.y() - box_.ymin;
  const double d_end = direction_ == Direction::horizontal ? box_.xmax - p.x() : box_.ymax - p.y();
  const double reach = std::sqrt(contact_reach2(radius_));
  flags_.push_back(static_cast<std::uint8_t>((d_start <= reach ? 1 : 0) | (d_end <= reach ? 2 : 0)));

  const int cx = std::min(nx_ - 1, static_cast<int>((p.x() - box_.xmin) / cell_));
  const int cy = std::min(ny_ - 1, static_cast<int>((p.y() - box_.ymin) / cell_));
  const double reach2 = contact_reach2(2.0 * radius_);
  for (int dy = -1; dy <= 1; ++dy) {
    const int y = cy + dy;
    if (y < 0 || y >= ny_) continue;
    for (int dx = -1; dx <= 1; ++dx) {
      const int x = cx + dx;
      if (x < 0 || x >= nx_) continue;
      for (const std::uint32_t j : buckets_[static_cast<std::size_t>(y) * nx_ + x]) {
        if ((points_[j] - p).squaredNorm() > reach2) continue;
        const std::uint32_t ra = sets_.find(id);
        const std::uint32_t rb = sets_.find(j);
        if (ra == rb) continue;
        const std::uint8_t merged = flags_[ra] | flags_[rb];
        flags_[sets_.unite(ra, rb)] = merged;
      }
    }
  }
  buckets_[static_cast<std::size_t>(cy) * nx_ + cx].push_back(id);
  crossed_ = flags_[sets_.find(id)] == 3;
  return crossed_;
}

}  // namespace percopack
