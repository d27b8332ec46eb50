#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "core/params.hpp"

namespace dbsim::channel {

/// One gated read-out of the detector array.
///
/// `clicks` holds the indices of detectors that fired (sorted, deduplicated);
/// `resolved` is set iff exactly one detector fired — the discard policy
/// treats any multi-click gate as unusable. `resolved_is_signal` is
/// omniscient bookkeeping for scoring: true when a signal photon contributed
/// to the resolved click. In-protocol logic never reads it.
struct DetectionEvent {
  core::Basis basis_used = core::Basis::Computational;
  std::vector<std::uint16_t> clicks;
  std::optional<std::uint16_t> resolved;
  bool resolved_is_signal = false;

  /// Dense 0/1 view of `clicks`, for serialization.
  std::vector<std::uint8_t> clicks_bitvector(int dimension) const {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(dimension), 0);
    for (auto c : clicks)
      bits[c] = 1;
    return bits;
  }
};

/// Counters accumulated over one session; counts partition twin_count.
struct SessionTally {
  std::uint64_t twin_count = 0;
  std::uint64_t correct = 0;
  std::uint64_t basis_error = 0;
  std::uint64_t empty_error = 0;
  std::uint64_t lost = 0;
  std::uint64_t discarded_mixed = 0;
  std::uint64_t discarded_mismatch = 0;

  void merge(const SessionTally &other) {
    twin_count += other.twin_count;
    correct += other.correct;
    basis_error += other.basis_error;
    empty_error += other.empty_error;
    lost += other.lost;
    discarded_mixed += other.discarded_mixed;
    discarded_mismatch += other.discarded_mismatch;
  }

  double p_corr_hat() const { return rate(correct); }
  double p_be_hat() const { return rate(basis_error); }
  double p_ee_hat() const { return rate(empty_error); }
  double ratio_hat() const {
    return correct == 0 ? std::numeric_limits<double>::infinity()
                        : static_cast<double>(basis_error + empty_error) /
                              static_cast<double>(correct);
  }

private:
  double rate(std::uint64_t k) const {
    return twin_count == 0 ? 0.0
                           : static_cast<double>(k) / static_cast<double>(twin_count);
  }
};

/// Counters from a photon-number-splitting run. Denominators are twins whose
/// two pulses both carried at least one photon.
struct OscarTally {
  std::uint64_t twin_count = 0;
  std::uint64_t both_loaded = 0;
  std::uint64_t intercepted_multi = 0; // both pulses multi-photon
  std::uint64_t extracted_pairs = 0;   // intercepted and basis guessed right
  std::uint64_t bob_success = 0;

  void merge(const OscarTally &o) {
    twin_count += o.twin_count;
    both_loaded += o.both_loaded;
    intercepted_multi += o.intercepted_multi;
    extracted_pairs += o.extracted_pairs;
    bob_success += o.bob_success;
  }

  double p_b_hat() const {
    return both_loaded == 0 ? 0.0
                            : static_cast<double>(bob_success) /
                                  static_cast<double>(both_loaded);
  }
  double p_o_hat() const {
    return both_loaded == 0 ? 0.0
                            : static_cast<double>(extracted_pairs) /
                                  static_cast<double>(both_loaded);
  }
};

} // namespace dbsim::channel
