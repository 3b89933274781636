#pragma once

#include "percopack/geometry.hpp"
#include "percopack/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace percopack {

// Two adjacent cells of the anchored side-`side` tessellation together with
// the lattice nodes that start inside their union. Only those nodes take part
// in the crossing event; nodes entering from outside are ignored, which can
// only lower the event probability.
struct PairFixture {
  double side = 50.0;
  HexPair pair;
  HexUnion region;
  std::vector<LatticeIndex> nodes;
  std::vector<Point> start_positions;
  // Terminal edge sets of the three crossing conditions:
  //   0: e3 -> e3'    1: e1 u e2 -> e4 u e5    2: e1' u e2' -> e4' u e5'
  std::array<std::vector<Segment>, 3> from;
  std::array<std::vector<Segment>, 3> to;
  // Per node, bit 2k / 2k+1 set when the time-0 ball meets from[k] / to[k].
  std::vector<std::uint8_t> start_terminals;
};

/// Builds the fixture and checks it: no node within 1e-6 of a cell edge and
/// all three conditions hold for the unperturbed nodes. Throws
/// std::logic_error when either check fails.
PairFixture build_fixture(double side = 50.0);
PairFixture build_fixture(double side, const HexCell& first, const HexCell& second);

enum class EventReading {
  // time-t crossing by the candidate set, conjoined with its time-0 crossing
  conjunction,
  // each condition needs one node path that is a crossing at time 0 and at
  // time t simultaneously (inside, touching, adjacent at both times)
  strict_path,
};

struct CrossingOutcome {
  bool success = false;
  std::array<bool, 3> conditions{};
  bool start_crossing = true;
  std::optional<bool> strict_success;
  std::size_t nodes_used = 0;
  double t = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct SampleOptions {
  EventReading reading = EventReading::conjunction;
  /// Also evaluate the strict-path reading and store it in strict_success.
  bool evaluate_strict = false;
};

/// One draw of the crossing event at time t. Node displacements are keyed by
/// lattice index within the stream, so fixtures sharing nodes see the same
/// motion. A pure function of (fixture, t, seed, stream).
CrossingOutcome sample_crossing_event(const PairFixture& fixture, double t, const RngStream& stream,
                                      const SampleOptions& options = {});

/// Time-t positions of the candidate nodes that are still inside H1 u H2.
std::vector<Point> fixture_positions(const PairFixture& fixture, double t, const RngStream& stream);

struct CorrelationEstimate {
  double rho = 0.0;  // NaN if either indicator is constant
  std::size_t trials = 0;
  std::size_t successes_a = 0;
  std::size_t successes_b = 0;
  std::size_t joint = 0;
};

/// Sample correlation of the two event indicators under a shared
/// displacement field (trial k uses stream (master_seed, k) for both).
CorrelationEstimate paired_indicator_correlation(const PairFixture& a, const PairFixture& b, double t,
                                                 std::uint64_t master_seed, std::size_t trials, unsigned workers = 1);

/// As above, but refuses pairs that share a cell.
CorrelationEstimate one_dependence_check(const PairFixture& a, const PairFixture& b, double t,
                                         std::uint64_t master_seed, std::size_t trials, unsigned workers = 1);

}  // namespace percopack
