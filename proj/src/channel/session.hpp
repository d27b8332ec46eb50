#pragma once

#include <cstdint>
#include <vector>

#include "channel/detection.hpp"
#include "core/params.hpp"

namespace dbsim::channel {

/// Knobs for a Monte Carlo session.
///
/// Trials are partitioned into fixed-size blocks; block b draws from random
/// stream (seed, b), and block tallies merge in block order. The result is
/// therefore identical for any thread count, and bit-identical across runs.
struct RunOptions {
  std::uint64_t seed = 1;
  bool force_single_photon = false;       // every pulse carries exactly one photon
  std::vector<double> delocalized_pdf;    // empty = uniform wrong-basis spread
  unsigned threads = 0;                   // 0 = hardware concurrency
};

/// Full DBS pipeline per block: encode -> transmit each slot with an
/// independent Bob basis -> sift against the announcement -> score.
SessionTally run_dbs_session(std::uint64_t twins, const core::ChannelParams &params,
                             const RunOptions &options);

/// Single-pulse baseline: one pulse per letter, wrong-basis slots discarded
/// through the classical basis reveal. Dark-count false positives on
/// signal-free slots are tallied as empty errors for every such slot,
/// matching the closed-form accounting (no basis filter on noise-only slots).
SessionTally run_ipbe_session(std::uint64_t slots, const core::ChannelParams &params,
                              const RunOptions &options);

/// Photon-number-splitting run: Oscar stores one photon from every
/// multi-photon pulse and measures after the pairing announcement, needing
/// only a basis guess per twin; Bob needs both halves delivered, dark-free
/// and measured in Alice's basis. Rates are per twin with both pulses loaded.
OscarTally run_oscar_pns(std::uint64_t twins, const core::ChannelParams &params,
                         const RunOptions &options);

} // namespace dbsim::channel
