#include "core/random.hpp"

#include <cmath>

namespace dbsim::core {

namespace {

// splitmix64, used only to spread (seed, stream_id) into engine state.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id),
      engine_(mix(mix(seed) ^ mix(stream_id * 0xda3e39cb94b95bdbULL + 1))) {}

std::uint64_t RandomSource::next_u64() { return engine_(); }

double RandomSource::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t RandomSource::next_below(std::uint32_t n) {
  if (n <= 1)
    return 0;
  const std::uint64_t span = 0x100000000ULL;
  const std::uint64_t limit = span - span % n;
  for (;;) {
    std::uint64_t v = next_u64() >> 32;
    if (v < limit)
      return static_cast<std::uint32_t>(v % n);
  }
}

bool RandomSource::bernoulli(double p) {
  if (p <= 0.0)
    return false;
  if (p >= 1.0)
    return true;
  return next_unit() < p;
}

int RandomSource::poisson(double mean) {
  if (mean <= 0.0)
    return 0;
  if (mean > 60.0) {
    // Sum of independent halves is Poisson with the full mean.
    int half = poisson(mean * 0.5);
    return half + poisson(mean - mean * 0.5);
  }
  const double floor = std::exp(-mean);
  int k = 0;
  double prod = next_unit();
  while (prod > floor) {
    ++k;
    prod *= next_unit();
  }
  return k;
}

int RandomSource::binomial(int n, double p) {
  if (n <= 0 || p <= 0.0)
    return 0;
  if (p >= 1.0)
    return n;
  const double u = next_unit();
  double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
  double cdf = pmf;
  int k = 0;
  const double odds = p / (1.0 - p);
  while (u > cdf && k < n) {
    pmf *= odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
    cdf += pmf;
    ++k;
  }
  return k;
}

void RandomSource::normal_pair(double &a, double &b) {
  double u1 = next_unit();
  while (u1 <= 0.0)
    u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  a = r * std::cos(theta);
  b = r * std::sin(theta);
}

} // namespace dbsim::core
