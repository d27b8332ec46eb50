#include "speckle/optimize.hpp"

#include <cmath>

#include "speckle/intensity.hpp"

namespace dbsim::speckle {

FocusResult optimize_focus(const TransferMatrix &tm, int target_mode,
                           core::Basis basis, int sweeps, int phase_count) {
  if (target_mode < 0 || target_mode >= tm.modes)
    throw_out_of_range("target_mode", "target outside the output mode range");
  if (sweeps < 1)
    throw_out_of_range("sweeps", "need at least one sweep");
  if (phase_count < 2)
    throw_out_of_range("phase_count", "need at least two test phases");

  const std::size_t s_count = static_cast<std::size_t>(tm.segments);

  // Per-segment coupling into the target observable. For a computational
  // target this is the matrix column; for a Fourier target it is the target
  // DFT row applied to each segment's output row, so the objective stays a
  // plain |sum_n sigma_n c_n|^2 in both bases.
  std::vector<Complex> coupling(s_count);
  if (basis == core::Basis::Computational) {
    for (std::size_t n = 0; n < s_count; ++n)
      coupling[n] = tm.at(static_cast<int>(n), target_mode);
  } else {
    const double norm = 1.0 / std::sqrt(static_cast<double>(tm.modes));
    for (std::size_t n = 0; n < s_count; ++n) {
      Complex acc(0.0, 0.0);
      for (int m = 0; m < tm.modes; ++m) {
        const double angle = 2.0 * M_PI * static_cast<double>(m) *
                             static_cast<double>(target_mode) /
                             static_cast<double>(tm.modes);
        acc += tm.at(static_cast<int>(n), m) * Complex(std::cos(angle), std::sin(angle));
      }
      coupling[n] = acc * norm;
    }
  }

  std::vector<Complex> phases(phase_count);
  for (int p = 0; p < phase_count; ++p) {
    const double angle = 2.0 * M_PI * static_cast<double>(p) /
                         static_cast<double>(phase_count);
    phases[static_cast<std::size_t>(p)] = Complex(std::cos(angle), std::sin(angle));
  }

  FocusResult result;
  result.mask.phases.assign(s_count, Complex(1.0, 0.0));
  result.mask.prepared = basis;
  result.mask.target_mode = target_mode;

  Complex amp(0.0, 0.0);
  for (std::size_t n = 0; n < s_count; ++n)
    amp += coupling[n];

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t n = 0; n < s_count; ++n) {
      const Complex rest = amp - result.mask.phases[n] * coupling[n];
      int best = -1;
      double best_val = std::norm(amp); // keeping the current phase is allowed
      for (int p = 0; p < phase_count; ++p) {
        const double val = std::norm(rest + phases[static_cast<std::size_t>(p)] * coupling[n]);
        if (val > best_val) {
          best_val = val;
          best = p;
        }
      }
      if (best >= 0) {
        result.mask.phases[n] = phases[static_cast<std::size_t>(best)];
        amp = rest + result.mask.phases[n] * coupling[n];
      }
    }
    result.objective_trace.push_back(std::norm(amp));
  }

  // Baseline: mean unoptimized intensity over all modes with a flat mask.
  // The DFT is unitary, so the mean is basis-independent.
  const std::vector<Complex> flat(s_count, Complex(1.0, 0.0));
  const std::vector<Complex> raw = output_field(tm, flat);
  double total = 0.0;
  for (const auto &e : raw)
    total += std::norm(e);
  const double baseline = total / static_cast<double>(tm.modes);
  result.enhancement = baseline > 0.0 ? std::norm(amp) / baseline : 0.0;
  return result;
}

} // namespace dbsim::speckle
