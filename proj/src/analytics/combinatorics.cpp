#include "analytics/combinatorics.hpp"

#include <cmath>

namespace dbsim::analytics {

core::BigUint pairing_combinations(int n) {
  if (n < 2)
    throw_out_of_range("n", "pairing count needs at least one pair (n >= 2)");
  if (n > 20000)
    throw_out_of_range("n", "stream length too large for exact pairing count");
  if (n % 2 != 0)
    throw Error(ErrorCode::OddLength, "n",
                "stream length must be even to pair every photon");
  core::BigUint c = core::BigUint::one();
  for (int j = 2; j <= n; j += 2) {
    // j(j−1)/2 stays well below 1e9 for any plausible stream length.
    c.multiply(static_cast<std::uint64_t>(j) * (j - 1) / 2);
  }
  return c;
}

void pairing_inverse_sci(int n, double &mantissa, int &exponent) {
  pairing_combinations(n).reciprocal_sci(mantissa, exponent);
}

double basis_guess_probability(int n, int basis_count) {
  if (n < 1)
    throw_out_of_range("n", "need at least one basis choice");
  if (basis_count < 2)
    throw_out_of_range("basis_count", "need at least 2 bases");
  return std::pow(static_cast<double>(basis_count), -static_cast<double>(n));
}

} // namespace dbsim::analytics
