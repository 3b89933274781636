#include "percopack/rng.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace percopack {

namespace {

Point box_muller(double u1, double u2)
{
  // u1 in (0, 1] keeps the logarithm finite.
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_(master_seed), index_(stream_index)
{
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32),
                    0x70657263U};
  engine_.seed(seq);
}

double RngStream::normal()
{
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const Point z = normal_pair();
  spare_ = z.y();
  has_spare_ = true;
  return z.x();
}

Point RngStream::normal_pair()
{
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return box_muller(u1, u2);
}

double RngStream::exponential(double rate)
{
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be positive");
  return -std::log(1.0 - uniform()) / rate;
}

long RngStream::poisson(double mean)
{
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("poisson mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    long k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }
  // PTRS transformed rejection with squeeze.
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0))
      return static_cast<long>(k);
  }
}

Point RngStream::keyed_normal_pair(std::uint64_t key) const
{
  const std::uint64_t base = splitmix64(splitmix64(master_ ^ 0x6B6579656421ULL) ^ splitmix64(index_)) ^ key;
  const std::uint64_t h1 = splitmix64(base);
  const std::uint64_t h2 = splitmix64(h1 ^ 0xA5A5A5A5A5A5A5A5ULL);
  return box_muller(1.0 - to_unit(h1), to_unit(h2));
}

}  // namespace percopack
