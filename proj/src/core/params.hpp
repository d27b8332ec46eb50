#pragma once

#include <cmath>

#include "core/error.hpp"

namespace dbsim::core {

/// The two mutually unbiased measurement bases used by the protocol.
enum class Basis : int { Computational = 0, Fourier = 1 };

constexpr Basis conjugate(Basis b) {
  return b == Basis::Computational ? Basis::Fourier : Basis::Computational;
}

/// One D-ary letter prepared in a specific basis.
struct QuditSymbol {
  int letter = 0;
  Basis basis = Basis::Computational;

  friend bool operator==(const QuditSymbol &, const QuditSymbol &) = default;
};

/// Physical and protocol parameters of the quantum channel.
///
/// dimension           D  — alphabet size / detector count, D >= 2
/// efficiency          η  — combined channel+detector efficiency, in [0,1]
/// dark_rate           γ  — dark counts per second, >= 0
/// gate_time           τ  — detector gate duration in seconds, > 0
/// mean_photon_number  λ  — Poisson mean per pulse, >= 0
/// basis_count         B  — number of mutually unbiased bases (2 supported)
struct ChannelParams {
  int dimension = 16;
  double efficiency = 0.52;
  double dark_rate = 300.0;
  double gate_time = 5e-7;
  double mean_photon_number = 0.2;
  int basis_count = 2;

  /// γτ(D−1): total dark exposure of the D−1 non-signal detectors per gate.
  double dark_exposure() const { return dark_rate * gate_time * (dimension - 1); }

  /// Per-detector dark click probability in one gate, 1 − e^{−γτ}.
  double gate_dark_probability() const { return -std::expm1(-dark_rate * gate_time); }
};

/// Validates a candidate parameter set. Returns the parameters unchanged or
/// throws Error{OutOfRange, field}; values are never silently clamped.
ChannelParams validate_params(const ChannelParams &candidate);

} // namespace dbsim::core
