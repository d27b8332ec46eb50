#pragma once

#include <cstdint>
#include <vector>

#include "channel/detection.hpp"
#include "protocol/sifting.hpp"

namespace dbsim::protocol {

/// Wilson-interval half-width for k successes out of n at z standard scores.
/// Well behaved near k = 0 and k = n, unlike the plain binomial formula.
double wilson_halfwidth(std::uint64_t k, std::uint64_t n, double z = 1.0);

/// Counts verdicts into a tally. Empirical rates and their Wilson errors are
/// exposed through the tally accessors; counts always partition twin_count.
channel::SessionTally score_session(const std::vector<Verdict> &verdicts);

} // namespace dbsim::protocol
