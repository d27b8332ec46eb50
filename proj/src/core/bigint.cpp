#include "core/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace dbsim::core {

namespace {
constexpr std::uint64_t kBase = 1000000000ULL;
}

BigUint::BigUint(std::uint64_t v) {
  do {
    limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
    v /= kBase;
  } while (v != 0);
}

void BigUint::multiply(std::uint64_t factor) {
  if (factor >= kBase)
    throw std::invalid_argument("BigUint::multiply factor must be < 1e9");
  if (factor == 0) {
    limbs_.assign(1, 0);
    return;
  }
  std::uint64_t carry = 0;
  for (auto &limb : limbs_) {
    const std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
    limb = static_cast<std::uint32_t>(cur % kBase);
    carry = cur / kBase;
  }
  while (carry != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
    carry /= kBase;
  }
}

void BigUint::halve() {
  std::uint64_t remainder = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    const std::uint64_t cur = remainder * kBase + limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(cur / 2);
    remainder = cur % 2;
  }
  if (remainder != 0)
    throw std::invalid_argument("BigUint::halve on odd value");
  while (limbs_.size() > 1 && limbs_.back() == 0)
    limbs_.pop_back();
}

std::string BigUint::to_string() const {
  std::string out = std::to_string(limbs_.back());
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::string chunk = std::to_string(limbs_[i]);
    out += std::string(9 - chunk.size(), '0') + chunk;
  }
  return out;
}

double BigUint::log10() const {
  // Take ~18 leading decimal digits as the mantissa.
  const std::string digits = to_string();
  const std::size_t take = digits.size() < 18 ? digits.size() : 18;
  const double lead = std::stod(digits.substr(0, take));
  return std::log10(lead) + static_cast<double>(digits.size() - take);
}

void BigUint::reciprocal_sci(double &mantissa, int &exponent) const {
  if (is_zero())
    throw std::invalid_argument("reciprocal of zero");
  const double l = -log10();
  exponent = static_cast<int>(std::floor(l));
  mantissa = std::pow(10.0, l - exponent);
  // Guard against mantissa landing on 10 by floating rounding.
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1;
  }
}

} // namespace dbsim::core
