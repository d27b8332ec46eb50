#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "speckle/fiber.hpp"

namespace dbsim::speckle {

/// Normalized per-pixel detection probability: entries >= 0, sum = 1.
struct IntensityMap {
  std::vector<double> p;
};

/// Sampled per-pixel statistics for photon pairs drawn from one map:
/// pd[m] is the single-photon frequency, pd2[m] the frequency of both
/// photons of a pair landing on pixel m.
struct DetectionMaps {
  std::vector<double> pd;
  std::vector<double> pd2;

  double same_pixel_fraction() const {
    double s = 0.0;
    for (double v : pd2)
      s += v;
    return s;
  }
};

/// Output field for a mask: E_m = sum_n sigma_n t_nm (unit input amplitudes).
std::vector<Complex> output_field(const TransferMatrix &tm,
                                  const std::vector<Complex> &mask);

/// Unitary discrete Fourier transform across modes,
/// F_l = (1/sqrt(M)) sum_m e^{i 2π m l / M} E_m.
std::vector<Complex> dft(const std::vector<Complex> &field);

/// Detection probabilities for a prepared mask read out in measurement_basis.
/// A Fourier read-out applies the mode DFT before squaring; the map is then
/// normalized. Localized when measurement_basis matches the basis the mask
/// was optimized in, speckle-like otherwise.
IntensityMap measure_intensity(const TransferMatrix &tm, const SlmMask &mask,
                               core::Basis measurement_basis);

/// The wrong-basis read-out of a prepared mask, packaged as the non-uniform
/// delocalization option for channel simulation.
IntensityMap delocalized_distribution(const TransferMatrix &tm, const SlmMask &mask);

/// Draws `photon_pairs` independent pairs of pixel outcomes from the map and
/// tallies the marginal and same-pixel coincidence frequencies.
DetectionMaps sample_pd_pd2(const IntensityMap &imap, std::uint64_t photon_pairs,
                            core::RandomSource &rng);

/// CSV grid export: a `rows,cols` header pair followed by row-major data
/// rows. Values are printed with %.17g so re-parsing is loss-free.
void write_grid_csv(std::ostream &os, const std::vector<double> &values, int rows,
                    int cols);
void write_grid_csv_file(const std::string &path, const std::vector<double> &values,
                         int rows, int cols);

} // namespace dbsim::speckle
