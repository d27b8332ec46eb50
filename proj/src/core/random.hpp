#pragma once

#include <cstdint>
#include <random>

namespace dbsim::core {

/// Deterministic random stream. Equal (seed, stream_id) pairs reproduce the
/// exact same draw sequence; distinct stream_ids give statistically
/// independent streams, so concurrent trials each own one.
///
/// All distribution code is implemented here rather than taken from
/// <random>'s distribution templates, whose output is not pinned by the
/// standard; mt19937_64 itself is, so outputs are stable across toolchains.
class RandomSource {
public:
  RandomSource(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  /// Uniform double in [0,1), 53 random bits.
  double next_unit();

  /// Uniform integer in [0, n), n >= 1. Unbiased via rejection.
  std::uint32_t next_below(std::uint32_t n);

  bool bernoulli(double p);

  /// Poisson draw; exact for any finite mean (large means split recursively).
  int poisson(double mean);

  /// Binomial draw by CDF inversion; intended for small n*p.
  int binomial(int n, double p);

  /// Standard normal pair via Box-Muller.
  void normal_pair(double &a, double &b);

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

} // namespace dbsim::core
