#include "protocol/sifting.hpp"

namespace dbsim::protocol {

SiftResult sift(const std::vector<channel::DetectionEvent> &outcomes,
                const ShuffleAnnouncement &announcement,
                const std::vector<core::QuditSymbol> &sent_slots,
                const core::ChannelParams &params) {
  (void)params;
  if (outcomes.size() != sent_slots.size())
    throw Error(ErrorCode::LengthMismatch, "outcomes",
                "outcome stream and slot stream differ in length");
  for (const auto &[a, b] : announcement.pairs)
    if (a >= outcomes.size() || b >= outcomes.size())
      throw Error(ErrorCode::LengthMismatch, "announcement",
                  "announced slot index outside the stream");

  SiftResult result;
  result.verdicts.reserve(announcement.pairs.size());

  for (std::size_t k = 0; k < announcement.pairs.size(); ++k) {
    const auto &[ia, ib] = announcement.pairs[k];
    const channel::DetectionEvent &ea = outcomes[ia];
    const channel::DetectionEvent &eb = outcomes[ib];

    // In-protocol decision: Bob sees only bases, clicks and resolvability.
    Verdict v;
    if (!ea.resolved || !eb.resolved) {
      v = Verdict::Lost;
    } else if (ea.basis_used != eb.basis_used) {
      v = Verdict::DiscardedMixed;
    } else if (*ea.resolved != *eb.resolved) {
      v = Verdict::DiscardedMismatch;
    } else {
      // Accepted. Ground truth decides which kind of acceptance this was.
      const bool pure_dark = !ea.resolved_is_signal && !eb.resolved_is_signal;
      if (pure_dark)
        v = Verdict::EmptyError;
      else if (ea.basis_used == sent_slots[ia].basis)
        v = Verdict::Correct;
      else
        v = Verdict::BasisError;
      if (v != Verdict::EmptyError) {
        result.key.letters.push_back(*ea.resolved);
        result.key.source_twin.push_back(static_cast<std::uint32_t>(k));
      }
    }
    result.verdicts.push_back(v);
  }
  return result;
}

} // namespace dbsim::protocol
