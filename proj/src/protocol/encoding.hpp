#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/params.hpp"
#include "core/random.hpp"

namespace dbsim::protocol {

/// One message letter encoded as two identical photons at two stream slots.
struct TwinRecord {
  core::QuditSymbol symbol;
  std::uint32_t first_slot = 0;
  std::uint32_t second_slot = 0;
};

/// The pairing Alice reveals after Bob has measured: a perfect matching on
/// slots {0,...,N−1}, one pair per twin, in twin order.
struct ShuffleAnnouncement {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

struct EncodedMessage {
  std::vector<core::QuditSymbol> slots; // what travels, slot by slot
  ShuffleAnnouncement announcement;     // revealed only at sifting time
  std::vector<TwinRecord> twins;
};

/// Encodes each letter as a twin: a uniformly random basis, two identical
/// symbols, and slot positions taken from a uniformly random shuffle of all
/// 2·len slots. Throws Error{OutOfRange,"letter"} for letters outside [0,D).
EncodedMessage encode_message(const std::vector<int> &letters,
                              const core::ChannelParams &params,
                              core::RandomSource &rng);

} // namespace dbsim::protocol
