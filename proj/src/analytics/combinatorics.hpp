#pragma once

#include "core/bigint.hpp"
#include "core/error.hpp"

namespace dbsim::analytics {

/// Number of sequential pairing choices an eavesdropper faces for a stream of
/// n interwoven photons: the product over j = 2,4,...,n of j(j−1)/2, which
/// equals n!/2^{n/2} exactly. n must be even, >= 2 and <= 20000 (the count
/// already spans ~73k digits at the bound).
core::BigUint pairing_combinations(int n);

/// 1 / pairing_combinations(n) as (mantissa, base-10 exponent).
void pairing_inverse_sci(int n, double &mantissa, int &exponent);

/// Probability of guessing all n basis choices: basis_count^{−n}.
/// Requires n >= 1 and basis_count >= 2.
double basis_guess_probability(int n, int basis_count);

} // namespace dbsim::analytics
