#include <doctest.h>

#include "percopack/domination_lab.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace percopack;

namespace {

// Largest vertex-to-vertex distance between cell 0 and cell `off`, in side
// units, from floating-point vertex coordinates.
double sup_vertex_distance(const HexCell& off)
{
  const HexTessellation tess(1.0);
  const auto a = tess.cell({0, 0}).vertices();
  const auto b = tess.cell(off).vertices();
  double d = 0.0;
  for (const auto& p : a)
    for (const auto& q : b) d = std::max(d, (p - q).norm());
  return d;
}

}  // namespace

TEST_CASE("neighbourhood J against a floating-point oracle")
{
  for (double delta : {1.0, 0.5, 0.25}) {
    const double C = neighborhood_constant(delta);
    const auto J = build_J(delta);
    const std::set<HexCell> members(J.begin(), J.end());
    CHECK(members.size() == J.size());
    const int R = static_cast<int>(C) + 2;
    std::size_t agreed = 0;
    for (int q = -R; q <= R; ++q)
      for (int r = -R; r <= R; ++r) {
        const double d = sup_vertex_distance({q, r});
        if (std::abs(d - C) < 1e-9) continue;  // tie, decided exactly by build_J
        CHECK(members.count({q, r}) == (d <= C ? 1u : 0u));
        ++agreed;
      }
    CHECK(agreed > 0);
    CHECK(static_cast<double>(J.size()) >= (C - 3) * (C - 3));
    CHECK(static_cast<double>(J.size()) <= 4.0 / 3.0 * C * C);
  }
  CHECK(build_J(1.0).size() == 7);
  CHECK(build_J(0.25).size() == 1087);
  CHECK_THROWS_AS(build_J(0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_J(1.5), std::invalid_argument);
}

TEST_CASE("hex kernel is symmetric and dominated by the heat kernel")
{
  const DominationParams params(0.25, 2.0);
  const HexKernel k(params);
  CHECK(k.cells().size() == k.values().size());
  double total = 0.0;
  for (std::size_t i = 0; i < k.cells().size(); ++i) {
    const HexCell c = k.cells()[i];
    CHECK(k.phi(c) == k.values()[i]);
    CHECK(k.phi({-c.q, -c.r}) == doctest::Approx(k.values()[i]).epsilon(1e-14));
    CHECK(k.phi(c) == doctest::Approx(heat_kernel(std::pow(k.sup_distance(c), 2), 2.0)).epsilon(1e-12));
    total += k.values()[i];
  }
  CHECK(total == doctest::Approx(k.normalizer()));
  CHECK(k.phi({10000, 0}) == 0.0);

  // phi(i, j) <= f_t(y - x) for any x in Q_i, y in Q_j.
  const HexTessellation tess(k.side());
  RngStream rng(1, 0);
  for (int n = 0; n < 5000; ++n) {
    const HexCell c = k.cells()[static_cast<std::size_t>(rng.uniform() * k.cells().size())];
    const Hexagon a = tess.cell({0, 0});
    const Hexagon b = tess.cell(c);
    Point x, y;
    do x = a.center + Point(rng.uniform(-1, 1), rng.uniform(-1, 1)) * a.side;
    while (!a.contains(x));
    do y = b.center + Point(rng.uniform(-1, 1), rng.uniform(-1, 1)) * b.side;
    while (!b.contains(y));
    CHECK(k.phi(c) <= heat_kernel((x - y).squaredNorm(), 2.0) * (1 + 1e-12));
  }
  CHECK(heat_kernel(0.0, 1.0) == doctest::Approx(1.0 / (2 * kPi)));
}

TEST_CASE("well-behaved probability bound and scale invariance")
{
  for (double delta : {0.1, 0.04}) {
    const auto a = well_behaved_probability(DominationParams(delta, 1.0));
    const auto b = well_behaved_probability(DominationParams(delta, 137.0));
    CHECK(a.bound_holds);
    CHECK(a.probability >= 1 - 5 * delta);
    CHECK(a.probability <= 1.0);
    CHECK(a.mu == doctest::Approx(-std::log(a.probability)));
    CHECK(std::abs(a.probability - b.probability) <= 1e-12 * a.probability);
    CHECK(a.neighborhood_size == build_J(delta).size());
  }
}

TEST_CASE("Monte Carlo coupling reproduces the well-behaved probability")
{
  const DominationParams params(0.1, 1.0);
  const double w = well_behaved_probability(params).probability;
  const auto mc = well_behaved_monte_carlo(params, 100000, 3);
  const double sigma = std::sqrt(w * (1 - w) / 100000.0);
  CHECK(std::abs(mc.phat() - w) < 4 * sigma);
  const auto mc2 = well_behaved_monte_carlo(params, 2000, 3, 3);
  CHECK(mc2.successes == well_behaved_monte_carlo(params, 2000, 3, 1).successes);
}

TEST_CASE("residual intensity")
{
  const DominationParams params(0.1, 1.0);
  const auto r = residual_intensity(params, Point(0.01, 0.02), 6.0);
  CHECK(r.lambda > 0.0);
  CHECK(std::isfinite(r.lambda));
  CHECK(r.tail_bound < 1e-4);
  CHECK(residual_intensity(params, Point(0.01, 0.02), 9.0).tail_bound < r.tail_bound);
  CHECK(r.ratio == doctest::Approx(r.lambda / std::sqrt(0.1)));
  CHECK_THROWS_AS(residual_intensity(params, Point::Zero(), 5.0), std::invalid_argument);
  CHECK_THROWS_AS(residual_intensity(DominationParams(0.5, 1.0), Point::Zero(), 6.0), std::domain_error);

  const auto sweep = residual_sweep({0.25, 0.09}, 1.0, 8, 4);
  REQUIRE(sweep.size() == 2);
  CHECK(sweep[1].max_ratio < sweep[0].max_ratio);
  for (const auto& row : sweep) CHECK(row.max_lambda == doctest::Approx(row.max_ratio * std::sqrt(row.delta)));
}

TEST_CASE("empty hexagon frequency")
{
  CHECK(empty_hexagon_probability(0.0, 2.0, 5, 1).empty == 0);
  // A hexagon of side 0.5 at the midpoint of three nodes misses them at t = 0.
  const Point hole{0.5, std::sqrt(3.0) / 6.0};
  CHECK(empty_hexagon_probability(0.0, 0.2, 5, 1, 1, hole).empty == 5);
  const auto e = empty_hexagon_probability(1.0, 0.5, 4000, 2);
  CHECK(e.reference == doctest::Approx(std::exp(-(2 / std::sqrt(3.0)) * Hexagon{{0, 0}, 0.5}.area())));
  CHECK(std::abs(e.phat - e.reference) < 0.05);
  CHECK(e.consistent);
}

TEST_CASE("conditioned path law 1/m!")
{
  CHECK(path_law_1_over_m_factorial(1, 0.3, 100, 1).phat == 1.0);
  double fact = 1.0;
  for (int m = 2; m <= 5; ++m) {
    fact *= m;
    const auto law = path_law_1_over_m_factorial(m, 1e-3, 100000, 5);
    CHECK(law.expected == doctest::Approx(1.0 / fact));
    CHECK(std::abs(law.phat - law.expected) <= 3.5 * law.sigma);
  }
  CHECK_THROWS_AS(path_law_1_over_m_factorial(0, 0.1, 10, 1), std::invalid_argument);
}

TEST_CASE("monotone edge preservation")
{
  const auto pair = monotone_edge_preservation(tangent_pair(), {0.0, 0.1, 0.2, 0.4}, 2000, 6);
  CHECK(pair.edges == 1);
  CHECK(pair.frequency[0] == 1.0);
  CHECK(pair.pathwise_violations == 0);
  for (std::size_t k = 1; k < pair.frequency.size(); ++k) CHECK(pair.frequency[k] <= pair.frequency[k - 1]);
  CHECK(pair.frequency[1] < 1.0);

  const auto flower = monotone_edge_preservation(hexagonal_flower(), {0.001, 0.01, 0.1}, 1000, 7);
  CHECK(flower.edges == 12);
  CHECK(flower.pathwise_violations == 0);

  CHECK_THROWS_AS(monotone_edge_preservation(PointSet({{0, 0}, {5, 0}}), {0.1}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(monotone_edge_preservation(tangent_pair(), {0.2, 0.1}, 10, 1), std::invalid_argument);
}

TEST_CASE("renormalized site field")
{
  const auto full = renormalization_field_demo(1.0, 1.0, 40, 40, 1);
  CHECK(full.open == full.cells);
  CHECK(full.largest == full.cells);
  CHECK(full.spans);
  const auto empty = renormalization_field_demo(0.0, 1.0, 40, 40, 1);
  CHECK(empty.open == 0);
  CHECK_FALSE(empty.spans);
  int spans = 0;
  for (std::uint64_t s = 0; s < 20; ++s) spans += renormalization_field_demo(0.9, 1.0, 100, 100, s).spans;
  CHECK(spans == 20);
  int sparse = 0;
  for (std::uint64_t s = 0; s < 20; ++s) sparse += renormalization_field_demo(0.1, 1.0, 100, 100, s).spans;
  CHECK(sparse == 0);
}

TEST_CASE("periodic configuration: crossing appears only after mixing")
{
  const auto early = figure2_crossing(0.0, 24.0, 2, 1);
  CHECK(early.crossings == 0);
  const auto late = figure2_crossing(25.0, 24.0, 3, 1);
  CHECK(late.crossings == 3);
  CHECK(late.majority);
  CHECK_THROWS_AS(figure2_crossing(1.0, 25.0, 1, 1), std::invalid_argument);
}
