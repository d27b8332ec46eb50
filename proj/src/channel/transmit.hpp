#pragma once

#include <vector>

#include "channel/detection.hpp"
#include "core/params.hpp"
#include "core/random.hpp"

namespace dbsim::channel {

/// Precomputed per-session channel state. The channel follows the same
/// accounting as the closed-form budgets: a pulse carries usable signal when
/// it is non-empty (Poisson n >= 1) and survives the lossy link with
/// probability η, independent of the photon multiplicity; dark counts hit
/// every detector independently within the gate.
class TransmitContext {
public:
  TransmitContext(const core::ChannelParams &params, bool force_loaded,
                  std::vector<double> delocalized_pdf = {});

  const core::ChannelParams &params() const { return params_; }
  bool force_loaded() const { return force_loaded_; }

  /// Sends one prepared symbol through source, loss, delocalization and dark
  /// counts; returns the gate read-out for Bob's chosen basis.
  DetectionEvent transmit_pulse(const core::QuditSymbol &sent, core::Basis bob_basis,
                                core::RandomSource &rng) const;

  /// Photon count for this pulse (1 when single-photon forcing is on).
  int draw_photon_count(core::RandomSource &rng) const;

private:
  int draw_delocalized(core::RandomSource &rng) const;
  void add_dark_clicks(DetectionEvent &event, core::RandomSource &rng) const;

  core::ChannelParams params_;
  bool force_loaded_;
  double dark_p_; // per-detector dark probability within one gate
  std::vector<double> delocalized_cdf_; // empty = uniform over D detectors
};

} // namespace dbsim::channel
