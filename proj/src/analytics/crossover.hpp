#pragma once

#include <optional>

#include "analytics/budgets.hpp"

namespace dbsim::analytics {

/// Outcome of scanning the loss axis for the point where the DBS and IPBE
/// error ratios cross. When no crossing exists on [0, loss_max],
/// dbs_dominates reports which scheme had the lower ratio throughout.
struct LossCrossover {
  bool found = false;
  double loss = 0.0;
  bool dbs_dominates = false;
};

/// Smallest D in [2, d_max] where the DBS ratio drops strictly below the
/// IPBE ratio, all other parameters fixed. nullopt when no such D exists.
std::optional<int> find_crossover_dimension(const core::ChannelParams &base, int d_max);

/// Loss value (1−η) where the two ratios cross, located by a coarse scan
/// followed by bisection to 1e-6. Both ratios diverge as η → 0 (the correct-
/// detection probability vanishes), so the scan is capped at loss_max,
/// default 0.9, below that degenerate regime. Ties count as DBS-preferred.
LossCrossover find_crossover_loss(const core::ChannelParams &base, int dimension,
                                  double loss_max = 0.9);

/// Solves for the gate time that places the D=16 loss crossover at
/// target_loss (default 0.45) under γ=500 counts/s, λ=0.2. Bisection over
/// τ in (0, tau_max]; throws Error{NoSolution} when the target is
/// unreachable. The result is frozen into run manifests by callers.
double calibrate_tau(double dark_rate = 500.0, double mean_photon_number = 0.2,
                     int dimension = 16, double target_loss = 0.45,
                     double tau_max = 1e-3);

} // namespace dbsim::analytics
