#include "speckle/fiber.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace dbsim::speckle {

TransferMatrix generate_fiber(int segments, int modes, std::uint64_t seed) {
  if (segments < 1)
    throw_out_of_range("segments", "need at least one SLM segment");
  if (modes < 1)
    throw_out_of_range("modes", "need at least one output mode");

  TransferMatrix tm;
  tm.segments = segments;
  tm.modes = modes;
  tm.seed = seed;
  tm.t.resize(static_cast<std::size_t>(segments) * modes);

  core::RandomSource rng(seed, 0);
  const double sigma = std::sqrt(0.5 / segments); // variance 1/S per entry
  for (auto &entry : tm.t) {
    double re = 0.0, im = 0.0;
    rng.normal_pair(re, im);
    entry = Complex(re * sigma, im * sigma);
  }
  return tm;
}

void save_fiber(const TransferMatrix &tm, const std::string &path) {
  std::ofstream os(path);
  if (!os)
    throw Error(ErrorCode::Io, "path", "cannot open fiber file for writing: " + path);
  os << "dbsim-fiber v1\n";
  os << tm.segments << " " << tm.modes << " " << tm.seed << "\n";
  char buf[64];
  for (const auto &entry : tm.t) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", entry.real(), entry.imag());
    os << buf;
  }
  if (!os)
    throw Error(ErrorCode::Io, "path", "short write to fiber file: " + path);
}

TransferMatrix load_fiber(const std::string &path) {
  std::ifstream is(path);
  if (!is)
    throw Error(ErrorCode::Io, "path", "cannot open fiber file: " + path);
  std::string header;
  std::getline(is, header);
  if (header != "dbsim-fiber v1")
    throw Error(ErrorCode::Io, "path", "not a fiber file: " + path);
  TransferMatrix tm;
  if (!(is >> tm.segments >> tm.modes >> tm.seed) || tm.segments < 1 || tm.modes < 1)
    throw Error(ErrorCode::Io, "path", "bad fiber header: " + path);
  tm.t.resize(static_cast<std::size_t>(tm.segments) * tm.modes);
  for (auto &entry : tm.t) {
    double re = 0.0, im = 0.0;
    if (!(is >> re >> im))
      throw Error(ErrorCode::Io, "path", "truncated fiber file: " + path);
    entry = Complex(re, im);
  }
  return tm;
}

} // namespace dbsim::speckle
