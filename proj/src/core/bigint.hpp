#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dbsim::core {

/// Minimal exact unsigned integer, base 1e9 limbs. Just enough arithmetic
/// for the pairing-combination counts, which overflow every native type.
class BigUint {
public:
  BigUint() : limbs_{0} {}
  explicit BigUint(std::uint64_t v);

  static BigUint one() { return BigUint(1); }

  void multiply(std::uint64_t factor);
  /// Exact division by 2; value must be even.
  void halve();

  bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
  bool operator==(const BigUint &other) const { return limbs_ == other.limbs_; }

  std::string to_string() const;

  /// log10 of the value (accurate to ~1e-12), for magnitude reporting.
  double log10() const;

  /// Scientific-notation parts of the reciprocal 1/value: mantissa in [1,10),
  /// exponent such that 1/value = mantissa * 10^exponent.
  void reciprocal_sci(double &mantissa, int &exponent) const;

private:
  std::vector<std::uint32_t> limbs_; // base 1e9, little-endian
};

} // namespace dbsim::core
