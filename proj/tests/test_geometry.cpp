#include <doctest.h>

#include "percopack/geometry.hpp"
#include "percopack/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace percopack;

namespace {

bool same_point(const Point& a, const Point& b, double tol = 1e-9) { return (a - b).norm() <= tol; }

bool share_endpoint(const Segment& s, const Segment& u)
{
  return same_point(s.a, u.a) || same_point(s.a, u.b) || same_point(s.b, u.a) || same_point(s.b, u.b);
}

// Half-plane test against the six edges, written independently of Hexagon::contains.
bool inside_flat_top(const Point& p, const Point& c, double side)
{
  const double dx = std::abs(p.x() - c.x());
  const double dy = std::abs(p.y() - c.y());
  const double h = side * std::sqrt(3.0) / 2.0;
  return dy <= h && std::sqrt(3.0) * dx + dy <= std::sqrt(3.0) * side;
}

}  // namespace

TEST_CASE("triangular lattice count in a 100 x 100 box")
{
  // Row j sits at height j*sqrt3/2 and holds exactly 100 nodes of a half-open
  // window of width 100.
  long rows = 0;
  while (rows * std::sqrt(3.0) / 2.0 < 100.0) ++rows;
  CHECK(rows == 116);
  CHECK(tri_lattice_points(AABB(0, 100, 0, 100)).size() == static_cast<std::size_t>(rows * 100));
  CHECK(square_lattice_points(AABB(0, 100, 0, 100)).size() == 10000);
}

TEST_CASE("lattice nodes are at unit nearest-neighbour distance")
{
  const auto pts = tri_lattice_points(AABB(0, 6, 0, 6));
  for (const auto& p : pts) {
    double best = 1e9;
    for (const auto& q : pts)
      if (&p != &q) best = std::min(best, (p - q).norm());
    CHECK(best == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hexagon vertices, area and containment")
{
  const Hexagon h{{2.0, -1.0}, 3.0};
  const auto vs = h.vertices();
  double shoelace = 0.0;
  for (int k = 0; k < 6; ++k) {
    const Point& a = vs[k];
    const Point& b = vs[(k + 1) % 6];
    shoelace += a.x() * b.y() - b.x() * a.y();
    CHECK((a - h.center).norm() == doctest::Approx(3.0));
    CHECK(h.edge(k).length() == doctest::Approx(3.0));
  }
  CHECK(shoelace / 2.0 == doctest::Approx(h.area()));  // counterclockwise
  CHECK(vs[0].x() == doctest::Approx(5.0));
  CHECK(h.edge(1).a.y() == doctest::Approx(h.edge(1).b.y()));
  CHECK(h.edge(1).a.y() > h.center.y());

  RngStream rng(7, 0);
  for (int k = 0; k < 20000; ++k) {
    const Point p{rng.uniform(-2, 6), rng.uniform(-5, 3)};
    const bool ref = inside_flat_top(p, h.center, h.side);
    const double dx = std::abs(p.x() - h.center.x());
    const double dy = std::abs(p.y() - h.center.y());
    const double margin = std::min(std::abs(dy - h.apothem()), std::abs(std::sqrt(3.0) * (dx - 3.0) + dy));
    if (margin > 1e-9) CHECK(h.contains(p) == ref);
  }
}

TEST_CASE("tessellation locate inverts center and tiles the plane")
{
  const HexTessellation tess(2.5);
  RngStream rng(11, 0);
  for (int k = 0; k < 2000; ++k) {
    const HexCell c{static_cast<int>(rng.uniform(-40, 40)), static_cast<int>(rng.uniform(-40, 40))};
    CHECK(tess.locate(tess.center(c)) == c);
    const Point p{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    CHECK(tess.cell(tess.locate(p)).contains(p));
  }
  for (const auto& n : kHexNeighbors)
    CHECK((tess.center(n) - tess.center({0, 0})).norm() == doctest::Approx(2.5 * std::sqrt(3.0)));
}

TEST_CASE("anchor edge of the default tessellation")
{
  const HexTessellation tess(50.0);
  const Segment a = tess.anchor();
  CHECK(same_point(a.a, {0.5, -std::sqrt(3.0) / 4.0}));
  CHECK(same_point(a.b, {50.5, -std::sqrt(3.0) / 4.0}));
  CHECK(tess.center({0, 0}).y() > a.a.y());
  CHECK(tess.center({0, -1}).y() < a.a.y());
}

TEST_CASE("hexagon pair labels run clockwise from the shared edge")
{
  const HexPair pair = hex_pair(50.0);
  CHECK(pair.h1.center.y() > pair.h2.center.y());
  const Segment& e = pair.edge(PairEdge::e);
  CHECK(e.length() == doctest::Approx(50.0));

  const PairEdge first[] = {PairEdge::e, PairEdge::e1, PairEdge::e2, PairEdge::e3, PairEdge::e4, PairEdge::e5};
  const PairEdge second[] = {PairEdge::e, PairEdge::e1p, PairEdge::e2p, PairEdge::e3p, PairEdge::e4p, PairEdge::e5p};
  for (const auto* labels : {first, second}) {
    for (int k = 0; k < 6; ++k) CHECK(share_endpoint(pair.edge(labels[k]), pair.edge(labels[(k + 1) % 6])));
  }
  // e3 is opposite e in H1: horizontal, two apothems above.
  const Segment& e3 = pair.edge(PairEdge::e3);
  CHECK(e3.a.y() == doctest::Approx(e.a.y() + 2 * pair.h1.apothem()));
  CHECK(e3.b.y() == doctest::Approx(e3.a.y()));
  const Segment& e3p = pair.edge(PairEdge::e3p);
  CHECK(e3p.a.y() == doctest::Approx(e.a.y() - 2 * pair.h2.apothem()));

  // Clockwise seen from the center of H1: e1 lies to the left of the shared edge.
  const Point m1 = (pair.edge(PairEdge::e1).a + pair.edge(PairEdge::e1).b) / 2;
  CHECK(m1.x() < pair.h1.center.x());
  const Point m5 = (pair.edge(PairEdge::e5).a + pair.edge(PairEdge::e5).b) / 2;
  CHECK(m5.x() > pair.h1.center.x());

  CHECK_THROWS_AS(hex_pair(HexTessellation(1.0), {0, 0}, {2, 0}), std::invalid_argument);
}

TEST_CASE("ball adjacency and ball-segment contact")
{
  CHECK(balls_adjacent(Point(0, 0), Point(1, 0), 0.5));
  CHECK_FALSE(balls_adjacent(Point(0, 0), Point(1.000001, 0), 0.5));
  // Tangent lattice neighbours whose coordinates carry rounding still touch.
  CHECK(balls_adjacent(tri_lattice_node({0, 0}), tri_lattice_node({0, 1}), 0.5));
  CHECK(balls_adjacent(tri_lattice_node({3, 7}), tri_lattice_node({2, 8}), 0.5));

  const Segment s{{0, 0}, {4, 0}};
  RngStream rng(3, 0);
  for (int k = 0; k < 5000; ++k) {
    const Point c{rng.uniform(-2, 6), rng.uniform(-2, 2)};
    const double r = rng.uniform(0.1, 1.5);
    // Oracle: closest point by dense sampling of the segment.
    double best = 1e9;
    for (int i = 0; i <= 4000; ++i) best = std::min(best, (c - Point(i / 1000.0, 0)).norm());
    if (std::abs(best - r) > 2e-3) CHECK(ball_intersects_segment(c, r, s) == (best <= r));
  }
}

TEST_CASE("region dispatch")
{
  const Region box = AABB(0, 2, 0, 3);
  CHECK(region_area(box) == doctest::Approx(6.0));
  const HexUnion u = hex_pair(1.0).as_union();
  CHECK(region_area(Region{u}) == doctest::Approx(2 * Hexagon{{0, 0}, 1.0}.area()));
  CHECK(point_in_region(u.cells[0].center, Region{u}));
  const auto nodes = tri_lattice_indices_in(Region{Hexagon{{0, 0}, 1.5}});
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    const Point a = tri_lattice_node(nodes[k - 1]);
    const Point b = tri_lattice_node(nodes[k]);
    CHECK((a.y() < b.y() || (a.y() == b.y() && a.x() < b.x())));
  }
  CHECK(nodes.size() == 7);  // center plus six neighbours
}
