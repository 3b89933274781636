#include <doctest.h>

#include "percopack/cluster.hpp"
#include "percopack/pointproc.hpp"

#include <cmath>

using namespace percopack;

TEST_CASE("point set validation")
{
  PointSet s({{0, 0}, {1, 1}});
  CHECK(s.multiplicity == std::vector<int>{1, 1});
  s.push_back({2, 2}, 3);
  CHECK(s.total_multiplicity() == 5);
  CHECK_NOTHROW(s.validate());
  s.multiplicity[0] = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_THROWS_AS(PointSet({{0, 0}}, -1.0), std::invalid_argument);
}

TEST_CASE("Poisson process count and support")
{
  const AABB box(0, 10, 0, 10);
  constexpr int reps = 2000;
  double total = 0.0;
  for (int k = 0; k < reps; ++k) {
    RngStream rng(1, k);
    const PointSet s = sample_poisson_pp(Region{box}, 1.5, rng, 0.7);
    CHECK(s.radius == 0.7);
    for (const auto& p : s.points) REQUIRE(box.contains(p));
    total += static_cast<double>(s.size());
  }
  CHECK(std::abs(total / reps - 150.0) < 5 * std::sqrt(150.0 / reps));

  const Hexagon h{{1, 1}, 2.0};
  RngStream rng(2, 0);
  const PointSet inside = sample_poisson_pp(Region{h}, 50.0, rng);
  for (const auto& p : inside.points) CHECK(h.contains(p));
  CHECK(sample_poisson_pp(Region{box}, 0.0, rng).empty());
  CHECK_THROWS_AS(sample_poisson_pp(Region{box}, -1.0, rng), std::invalid_argument);
}

TEST_CASE("Brownian displacement")
{
  PointSet start;
  start.push_back({0, 0}, 20000);
  RngStream rng(3, 0);
  CHECK(brownian_displace(start, 0.0, rng).points == start.points);

  const PointSet moved = brownian_displace(start, 2.5, rng);
  REQUIRE(moved.size() == 20000);  // superposed balls move separately
  CHECK(moved.time_label == 2.5);
  double sx = 0, sxx = 0, syy = 0;
  for (const auto& p : moved.points) {
    sx += p.x();
    sxx += p.x() * p.x();
    syy += p.y() * p.y();
  }
  const double n = 20000;
  CHECK(std::abs(sx / n) < 5 * std::sqrt(2.5 / n));
  CHECK(std::abs(sxx / n - 2.5) < 5 * 2.5 * std::sqrt(2.0 / n));
  CHECK(std::abs(syy / n - 2.5) < 5 * 2.5 * std::sqrt(2.0 / n));
  CHECK_THROWS_AS(brownian_displace(start, -1.0, rng), std::invalid_argument);
}

TEST_CASE("perturbed lattice displacements are keyed by node")
{
  const RngStream rng(4, 0);
  const auto nodes_of = [](const AABB& w) {
    std::vector<Point> out;
    for (const auto& k : tri_lattice_indices_in(Region{w})) out.push_back(tri_lattice_node(k));
    return out;
  };
  CHECK(perturbed_tri_lattice(AABB(0, 5, 0, 5), 0.0, rng).points == nodes_of(AABB(0, 5, 0, 5)));

  // A node shared by two windows moves identically in both.
  const PointSet a = perturbed_tri_lattice(AABB(0, 10, 0, 10), 0.3, rng);
  const PointSet b = perturbed_tri_lattice(AABB(4, 14, 0, 10), 0.3, rng);
  const auto na = nodes_of(AABB(0, 10, 0, 10));
  const auto nb = nodes_of(AABB(4, 14, 0, 10));
  int shared = 0;
  for (std::size_t i = 0; i < na.size(); ++i)
    for (std::size_t j = 0; j < nb.size(); ++j)
      if ((na[i] - nb[j]).norm() < 1e-9) {
        ++shared;
        CHECK((a.points[i] - na[i] - (b.points[j] - nb[j])).norm() < 1e-12);
      }
  CHECK(shared > 50);
}

TEST_CASE("Brownian scaling coupling")
{
  const std::vector<Point> d{{2, -4}, {0.5, 1}};
  const auto half = brownian_scaling_couple(d, 1.0, 4.0);
  CHECK(half[0].isApprox(Point(1, -2)));
  CHECK(half[1].isApprox(Point(0.25, 0.5)));
  CHECK(brownian_scaling_couple(d, 0.0, 4.0)[0].norm() == 0.0);
  CHECK_THROWS_AS(brownian_scaling_couple(d, 5.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(brownian_scaling_couple(d, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("site field extremes and frequency")
{
  const AABB w(0, 60, 0, 60);
  RngStream rng(5, 0);
  const SiteField none = sample_site_field(0.0, 1.0, w, rng);
  const SiteField all = sample_site_field(1.0, 1.0, w, rng);
  CHECK(none.open_count() == 0);
  CHECK(all.open_count() == all.cells.size());
  const SiteField half = sample_site_field(0.3, 1.0, w, rng);
  const double n = static_cast<double>(half.cells.size());
  CHECK(std::abs(half.open_count() / n - 0.3) < 5 * std::sqrt(0.21 / n));
  CHECK(std::is_sorted(half.cells.begin(), half.cells.end(),
                       [](const SiteCell& a, const SiteCell& b) { return a.cell < b.cell; }));
  CHECK(half.find(half.cells[17].cell) == 17);
  CHECK(half.find({100000, 0}) == -1);
}

TEST_CASE("Poisson marks")
{
  PointSet s(std::vector<Point>(50000, Point::Zero()));
  RngStream rng(6, 0);
  const auto marks = poisson_marks(s, 0.4, rng);
  REQUIRE(marks.size() == s.size());
  double sum = 0;
  for (long m : marks) sum += m;
  CHECK(std::abs(sum / 50000 - 0.4) < 5 * std::sqrt(0.4 / 50000));
}

TEST_CASE("periodic superposed configuration")
{
  const AABB w(-12, 12, 0, 12);
  const PointSet s = figure2_configuration(w);
  CHECK(s.size() == 8 * kFigure2Tile.size());
  CHECK(static_cast<double>(s.total_multiplicity()) / w.area() == doctest::Approx(4.0));
  for (const auto& p : s.points) CHECK(w.contains(p));
  // Tiles are internally connected but separated from each other at time 0.
  CHECK_FALSE(box_crossing(s, w, Direction::horizontal));
  CHECK_THROWS_AS(figure2_configuration(AABB(0, 7, 0, 6)), std::invalid_argument);
}
