#pragma once

#include <iosfwd>
#include <vector>

#include "channel/detection.hpp"
#include "protocol/encoding.hpp"

namespace dbsim::protocol {

/// A replayable session record: prepared slots, Bob's read-outs, and the
/// pairing announcement. Only in-protocol observables are recorded, so a
/// reloaded transcript replays every accept/discard decision but not the
/// omniscient correct/basis-error/empty-error split, which needs the live
/// channel's ground truth.
struct Transcript {
  int dimension = 0;
  std::vector<core::QuditSymbol> slots;
  std::vector<channel::DetectionEvent> outcomes;
  ShuffleAnnouncement announcement;
};

/// Line-oriented text format, one slot per line:
///   slot <index> basis <C|F> letter <k> bob <C|F> clicks <0/1...D-1>
/// preceded by a header with dimension/slot count and the announced pairs.
void write_transcript(std::ostream &os, const Transcript &t);

/// Parses the format written by write_transcript. Throws Error{Io} on
/// malformed input.
Transcript read_transcript(std::istream &is);

} // namespace dbsim::protocol
