#pragma once

#include <vector>

#include "channel/detection.hpp"
#include "protocol/encoding.hpp"

namespace dbsim::protocol {

/// Per-twin sifting outcome. Correct/BasisError/EmptyError are accepted by
/// Bob (he cannot tell them apart); the split between them is omniscient
/// ground truth used only for scoring.
enum class Verdict {
  Correct,
  BasisError,
  DiscardedMixed,    // Bob measured the two halves in different bases
  DiscardedMismatch, // same basis but conflicting letters
  Lost,              // at least one half produced no usable click
  EmptyError,        // accepted, but both clicks were pure dark counts
};

/// Letters Bob keeps after sifting: one per Correct or BasisError twin.
/// BasisError letters are wrong yet indistinguishable from correct ones.
struct SiftedKey {
  std::vector<int> letters;
  std::vector<std::uint32_t> source_twin;
};

struct SiftResult {
  SiftedKey key;
  std::vector<Verdict> verdicts; // one per announced pair, in twin order
};

/// Cross-references Bob's per-slot outcomes against the pairing announcement.
/// The accept/discard decision uses observables only (clicks, bases,
/// resolution); `sent_slots` supplies the ground truth that splits accepted
/// twins into Correct / BasisError / EmptyError for scoring.
/// Throws Error{LengthMismatch} when outcomes and slots disagree in length.
SiftResult sift(const std::vector<channel::DetectionEvent> &outcomes,
                const ShuffleAnnouncement &announcement,
                const std::vector<core::QuditSymbol> &sent_slots,
                const core::ChannelParams &params);

} // namespace dbsim::protocol
