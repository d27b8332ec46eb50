#include "protocol/scoring.hpp"

#include <cmath>

namespace dbsim::protocol {

double wilson_halfwidth(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0)
    return 0.0;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  return z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
}

channel::SessionTally score_session(const std::vector<Verdict> &verdicts) {
  channel::SessionTally t;
  t.twin_count = verdicts.size();
  for (Verdict v : verdicts) {
    switch (v) {
    case Verdict::Correct:
      ++t.correct;
      break;
    case Verdict::BasisError:
      ++t.basis_error;
      break;
    case Verdict::EmptyError:
      ++t.empty_error;
      break;
    case Verdict::Lost:
      ++t.lost;
      break;
    case Verdict::DiscardedMixed:
      ++t.discarded_mixed;
      break;
    case Verdict::DiscardedMismatch:
      ++t.discarded_mismatch;
      break;
    }
  }
  return t;
}

} // namespace dbsim::protocol
