#pragma once

#include <utility>

#include "core/params.hpp"

namespace dbsim::analytics {

/// Closed-form per-twin (or per-slot) error budget of one encoding scheme.
/// ratio is the figure of merit (P_BE + P_EE) / P_Corr.
struct ErrorBudget {
  double p_corr = 0.0;
  double p_be = 0.0;
  double p_ee = 0.0;
  double ratio = 0.0;
};

/// Closed-form benchmark of legitimate-receiver versus photon-number-splitting
/// eavesdropper extraction probabilities.
struct EveBudget {
  double p_b = 0.0;
  double p_o = 0.0;
  double ratio = 0.0;
  double p_mult = 0.0;
  double p_phot = 0.0;
};

enum class Mode { Dbs, Ipbe };

/// P_γ = 1 − e^{−γτ(D−1)}: probability of at least one dark click among the
/// D−1 non-signal detectors within one gate.
double p_gamma(const core::ChannelParams &params);

/// P(n >= 1) for a Poisson pulse: 1 − e^{−λ}.
double photon_probability(double mean_photon_number);

/// P(n >= 2) for a Poisson pulse: 1 − e^{−λ}(1 + λ), in closed form.
double multi_photon_probability(double mean_photon_number);

/// Two-photon (DBS) budget:
///   P_Corr = (η²/4)(1−e^{−λ})² e^{−2γτ(D−1)}
///   P_BE   = (η²/4D)(1−e^{−λ})²
///   P_EE   = e^{−2λ}P_γ²/D + (1−e^{−λ})²(1−η)²P_γ²/D
/// Throws Error{DegenerateDenominator} when P_Corr = 0 (λ=0 or η=0).
/// Requires basis_count == 2.
ErrorBudget dbs_budget(const core::ChannelParams &params);

/// Single-photon (IPBE) budget:
///   P_Corr = η(1−e^{−λ})(1−P_γ)/2,  P_BE = 0,
///   P_EE   = e^{−λ}P_γ + (1−e^{−λ})(1−η)P_γ
ErrorBudget ipbe_budget(const core::ChannelParams &params);

/// Both published forms of the DBS P_Corr, which are algebraically equal:
/// (η²/4)(1−e^{−λ})² e^{−2γτ(D−1)} and η²(1−e^{−λ})²(1−P_γ)²/4.
std::pair<double, double> dbs_corr_equivalence(const core::ChannelParams &params);

/// Bob-vs-Oscar extraction budget. For DBS: P_B = (η/2 (1−P_γ))²,
/// P_O = ½(P_mult/P_phot)². For IPBE: P_B = (η/2)(1−P_γ), P_O = P_mult/P_phot.
/// Throws Error{DegenerateDenominator} when λ = 0. Ratio may be +infinity
/// when P_O underflows to zero; that sentinel is intentional.
EveBudget eve_budget(const core::ChannelParams &params, Mode mode);

} // namespace dbsim::analytics
