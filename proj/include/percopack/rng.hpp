#pragma once

#include "percopack/geometry.hpp"

#include <cstdint>
#include <random>

namespace percopack {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Reproducible random stream identified by (master_seed, stream_index).
//
// Sequential draws come from std::mt19937_64, whose output sequence is fixed
// by the C++ standard, seeded through std::seed_seq (also fully specified).
// Every distribution is implemented here rather than taken from <random>, so
// draws are bit-identical across standard libraries:
//   uniform  53-bit conversion of one engine word
//   normal   Box-Muller on two uniforms, both outputs used
//   poisson  Knuth multiplication below mean 10, PTRS (Hormann) above
//
// Keyed draws (keyed_normal_pair) are counter-based: they depend only on the
// stream identity and the key, never on the engine state. They implement
// displacement fields indexed by lattice node, so two samplers that consult
// the same node see the same motion.
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_index() const { return index_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform() { return to_unit(engine_()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Point normal_pair();
  bool bernoulli(double p) { return uniform() < p; }
  long poisson(double mean);
  double exponential(double rate);

  Point keyed_normal_pair(std::uint64_t key) const;

private:
  std::uint64_t master_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Key for a triangular-lattice node (i, j) in keyed draws.
constexpr std::uint64_t lattice_key(int i, int j)
{
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

}  // namespace percopack
