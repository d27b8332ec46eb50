#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/params.hpp"
#include "core/random.hpp"

namespace dbsim::speckle {

using Complex = std::complex<double>;

/// Random linear map from SLM input segments to fiber output modes.
/// Entries are i.i.d. circular Gaussian with variance 1/S, drawn once at
/// construction; the fiber is static afterwards.
struct TransferMatrix {
  int segments = 0;
  int modes = 0;
  std::uint64_t seed = 0;
  std::vector<Complex> t; // row-major: t[n * modes + m]

  const Complex &at(int segment, int mode) const {
    return t[static_cast<std::size_t>(segment) * modes + mode];
  }
};

TransferMatrix generate_fiber(int segments, int modes, std::uint64_t seed);

/// Text export with seed metadata; load reproduces the matrix bit-exactly.
void save_fiber(const TransferMatrix &tm, const std::string &path);
TransferMatrix load_fiber(const std::string &path);

/// Unit-modulus phase per SLM segment, tagged with the basis and target mode
/// it was optimized for.
struct SlmMask {
  std::vector<Complex> phases;
  core::Basis prepared = core::Basis::Computational;
  int target_mode = 0;
};

} // namespace dbsim::speckle
