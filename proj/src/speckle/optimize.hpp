#pragma once

#include "speckle/fiber.hpp"

namespace dbsim::speckle {

struct FocusResult {
  SlmMask mask;
  double enhancement = 0.0; // focused target intensity / mean unoptimized intensity
  std::vector<double> objective_trace; // target intensity after each sweep
};

/// Sequential wavefront optimization: cycle over segments, trying a fixed
/// grid of test phases per segment and keeping the one that maximizes the
/// target-mode intensity. For a Fourier-basis target the objective is the
/// intensity after the mode DFT. The objective never decreases; there is no
/// convergence failure mode, only the fixed sweep budget.
FocusResult optimize_focus(const TransferMatrix &tm, int target_mode,
                           core::Basis basis, int sweeps = 3, int phase_count = 16);

} // namespace dbsim::speckle
