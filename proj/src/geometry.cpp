#include "percopack/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace percopack {

namespace {

constexpr std::array<double, 6> kCos{1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
constexpr std::array<double, 6> kSin{0.0, kSqrt3 / 2.0, kSqrt3 / 2.0, 0.0, -kSqrt3 / 2.0, -kSqrt3 / 2.0};

void require_box(const AABB& b)
{
  const bool finite = std::isfinite(b.xmin) && std::isfinite(b.xmax) && std::isfinite(b.ymin) &&
                      std::isfinite(b.ymax);
  if (!finite || !(b.xmin < b.xmax) || !(b.ymin < b.ymax))
    throw std::invalid_argument("degenerate or non-finite region");
}

template <typename Emit>
void for_each_tri_index(const AABB& box, Emit&& emit)
{
  const double row = kSqrt3 / 2.0;
  const auto j0 = static_cast<long>(std::floor(box.ymin / row)) - 1;
  for (long j = j0;; ++j) {
    const double y = j * row;
    if (y >= box.ymax) break;
    if (y < box.ymin) continue;
    const double shift = 0.5 * static_cast<double>(j);
    const auto i0 = static_cast<long>(std::floor(box.xmin - shift)) - 1;
    for (long i = i0;; ++i) {
      const double x = static_cast<double>(i) + shift;
      if (x >= box.xmax) break;
      if (x < box.xmin) continue;
      emit(static_cast<int>(i), static_cast<int>(j), Point{x, y});
    }
  }
}

}  // namespace

AABB::AABB(double x0, double x1, double y0, double y1) : xmin(x0), xmax(x1), ymin(y0), ymax(y1) {}

Point Hexagon::vertex(int k) const
{
  const int m = ((k % 6) + 6) % 6;
  return center + side * Point{kCos[m], kSin[m]};
}

std::array<Point, 6> Hexagon::vertices() const
{
  std::array<Point, 6> out;
  for (int k = 0; k < 6; ++k) out[k] = vertex(k);
  return out;
}

Segment Hexagon::edge(int k) const { return {vertex(k), vertex(k + 1)}; }

bool Hexagon::contains(const Point& p) const
{
  const double dx = std::abs(p.x() - center.x());
  const double dy = std::abs(p.y() - center.y());
  const double h = apothem();
  return dy <= h && 0.5 * kSqrt3 * dx + 0.5 * dy <= h;
}

AABB Hexagon::bounding_box() const
{
  const double h = apothem();
  return {center.x() - side, center.x() + side, center.y() - h, center.y() + h};
}

bool HexUnion::contains(const Point& p) const
{
  return std::any_of(cells.begin(), cells.end(), [&](const Hexagon& h) { return h.contains(p); });
}

double HexUnion::area() const
{
  double a = 0.0;
  for (const auto& h : cells) a += h.area();
  return a;
}

AABB HexUnion::bounding_box() const
{
  if (cells.empty()) throw std::invalid_argument("empty hexagon union");
  AABB box = cells.front().bounding_box();
  for (const auto& h : cells) {
    const AABB b = h.bounding_box();
    box.xmin = std::min(box.xmin, b.xmin);
    box.xmax = std::max(box.xmax, b.xmax);
    box.ymin = std::min(box.ymin, b.ymin);
    box.ymax = std::max(box.ymax, b.ymax);
  }
  return box;
}

bool point_in_region(const Point& p, const Region& region)
{
  return std::visit([&](const auto& r) { return r.contains(p); }, region);
}

double region_area(const Region& region)
{
  return std::visit([](const auto& r) { return r.area(); }, region);
}

AABB region_bounding_box(const Region& region)
{
  return std::visit(
      [](const auto& r) -> AABB {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, AABB>)
          return r;
        else
          return r.bounding_box();
      },
      region);
}

HexTessellation::HexTessellation(double side) : HexTessellation(side, Point{0.5, -kSqrt3 / 4.0}) {}

HexTessellation::HexTessellation(double side, const Point& anchor_left)
    : side_(side), origin_(anchor_left + Point{side / 2.0, side * kSqrt3 / 2.0})
{
  if (!(side > 0.0) || !std::isfinite(side)) throw std::invalid_argument("hexagon side must be positive");
}

Segment HexTessellation::anchor() const
{
  const Point left = origin_ - Point{side_ / 2.0, side_ * kSqrt3 / 2.0};
  return {left, left + Point{side_, 0.0}};
}

Point HexTessellation::center(const HexCell& c) const
{
  return origin_ + Point{1.5 * side_ * c.q, side_ * kSqrt3 * (c.r + 0.5 * c.q)};
}

HexCell HexTessellation::locate(const Point& p) const
{
  const Point d = (p - origin_) / side_;
  const double fq = 2.0 / 3.0 * d.x();
  const double fr = -1.0 / 3.0 * d.x() + kSqrt3 / 3.0 * d.y();
  const double fs = -fq - fr;
  double q = std::round(fq);
  double r = std::round(fr);
  const double s = std::round(fs);
  const double dq = std::abs(q - fq);
  const double dr = std::abs(r - fr);
  const double ds = std::abs(s - fs);
  if (dq > dr && dq > ds)
    q = -r - s;
  else if (dr > ds)
    r = -q - s;
  return {static_cast<int>(q), static_cast<int>(r)};
}

std::vector<Point> tri_lattice_points(const AABB& region)
{
  require_box(region);
  std::vector<Point> out;
  for_each_tri_index(region, [&](int, int, const Point& p) { out.push_back(p); });
  return out;
}

std::vector<Point> square_lattice_points(const AABB& region)
{
  require_box(region);
  std::vector<Point> out;
  const auto j0 = static_cast<long>(std::ceil(region.ymin));
  const auto i0 = static_cast<long>(std::ceil(region.xmin));
  for (long j = j0; static_cast<double>(j) < region.ymax; ++j)
    for (long i = i0; static_cast<double>(i) < region.xmax; ++i)
      out.emplace_back(static_cast<double>(i), static_cast<double>(j));
  return out;
}

std::vector<LatticeIndex> tri_lattice_indices_in(const Region& region)
{
  const AABB box = region_bounding_box(region).padded(1.0);
  std::vector<LatticeIndex> out;
  for_each_tri_index(box, [&](int i, int j, const Point& p) {
    if (point_in_region(p, region)) out.push_back({i, j});
  });
  return out;
}

std::string_view to_string(PairEdge label)
{
  static constexpr std::array<std::string_view, 11> names{"e",   "e1",  "e2",  "e3",  "e4", "e5",
                                                          "e1'", "e2'", "e3'", "e4'", "e5'"};
  return names[static_cast<std::size_t>(label)];
}

HexPair hex_pair(const HexTessellation& tess, const HexCell& first, const HexCell& second)
{
  const HexCell offset{second.q - first.q, second.r - first.r};
  const auto it = std::find(kHexNeighbors.begin(), kHexNeighbors.end(), offset);
  if (it == kHexNeighbors.end()) throw std::invalid_argument("hex_pair: cells do not share an edge");
  // Neighbor direction d is reached through edge d of the first cell.
  const int shared1 = static_cast<int>(it - kHexNeighbors.begin());
  const int shared2 = (shared1 + 3) % 6;

  HexPair pair;
  pair.cell1 = first;
  pair.cell2 = second;
  pair.h1 = tess.cell(first);
  pair.h2 = tess.cell(second);
  pair.edges[static_cast<std::size_t>(PairEdge::e)] = pair.h1.edge(shared1);
  // Vertices run counterclockwise, so walking clockwise from the shared edge
  // visits edge indices shared-1, shared-2, ...
  for (int k = 1; k <= 5; ++k) {
    pair.edges[static_cast<std::size_t>(k)] = pair.h1.edge(shared1 - k + 6);
    pair.edges[static_cast<std::size_t>(5 + k)] = pair.h2.edge(shared2 - k + 6);
  }
  return pair;
}

HexPair hex_pair(double side)
{
  const HexTessellation tess(side);
  HexPair pair = hex_pair(tess, {0, 0}, {0, -1});
  pair.edges[static_cast<std::size_t>(PairEdge::e)] = tess.anchor();
  return pair;
}

}  // namespace percopack
