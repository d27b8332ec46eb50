#include "speckle/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace dbsim::speckle {

std::vector<Complex> output_field(const TransferMatrix &tm,
                                  const std::vector<Complex> &mask) {
  if (static_cast<int>(mask.size()) != tm.segments)
    throw Error(ErrorCode::LengthMismatch, "mask",
                "mask size must equal the segment count");
  std::vector<Complex> field(static_cast<std::size_t>(tm.modes), Complex(0.0, 0.0));
  for (int n = 0; n < tm.segments; ++n) {
    const Complex sigma = mask[static_cast<std::size_t>(n)];
    const Complex *row = &tm.t[static_cast<std::size_t>(n) * tm.modes];
    for (int m = 0; m < tm.modes; ++m)
      field[static_cast<std::size_t>(m)] += sigma * row[m];
  }
  return field;
}

std::vector<Complex> dft(const std::vector<Complex> &field) {
  const int m_count = static_cast<int>(field.size());
  std::vector<Complex> out(field.size(), Complex(0.0, 0.0));
  const double norm = 1.0 / std::sqrt(static_cast<double>(m_count));
  for (int l = 0; l < m_count; ++l) {
    Complex acc(0.0, 0.0);
    for (int m = 0; m < m_count; ++m) {
      const double angle = 2.0 * M_PI * static_cast<double>(m) *
                           static_cast<double>(l) / static_cast<double>(m_count);
      acc += field[static_cast<std::size_t>(m)] * Complex(std::cos(angle), std::sin(angle));
    }
    out[static_cast<std::size_t>(l)] = acc * norm;
  }
  return out;
}

IntensityMap measure_intensity(const TransferMatrix &tm, const SlmMask &mask,
                               core::Basis measurement_basis) {
  std::vector<Complex> field = output_field(tm, mask.phases);
  if (measurement_basis == core::Basis::Fourier)
    field = dft(field);
  IntensityMap map;
  map.p.resize(field.size());
  double total = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    map.p[i] = std::norm(field[i]);
    total += map.p[i];
  }
  if (total <= 0.0)
    throw Error(ErrorCode::DegenerateDenominator, "intensity",
                "output field carries no energy");
  for (auto &v : map.p)
    v /= total;
  return map;
}

IntensityMap delocalized_distribution(const TransferMatrix &tm, const SlmMask &mask) {
  return measure_intensity(tm, mask, core::conjugate(mask.prepared));
}

DetectionMaps sample_pd_pd2(const IntensityMap &imap, std::uint64_t photon_pairs,
                            core::RandomSource &rng) {
  if (photon_pairs < 1)
    throw_out_of_range("photon_pairs", "need at least one pair");
  const std::size_t m_count = imap.p.size();
  std::vector<double> cdf(m_count);
  double acc = 0.0;
  for (std::size_t i = 0; i < m_count; ++i) {
    acc += imap.p[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  const auto draw = [&]() {
    const double u = rng.next_unit();
    return static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  };

  std::vector<std::uint64_t> singles(m_count, 0);
  std::vector<std::uint64_t> coincidences(m_count, 0);
  for (std::uint64_t i = 0; i < photon_pairs; ++i) {
    const std::size_t a = draw();
    const std::size_t b = draw();
    ++singles[a];
    ++singles[b];
    if (a == b)
      ++coincidences[a];
  }

  DetectionMaps maps;
  maps.pd.resize(m_count);
  maps.pd2.resize(m_count);
  const double photon_norm = 1.0 / (2.0 * static_cast<double>(photon_pairs));
  const double pair_norm = 1.0 / static_cast<double>(photon_pairs);
  for (std::size_t i = 0; i < m_count; ++i) {
    maps.pd[i] = static_cast<double>(singles[i]) * photon_norm;
    maps.pd2[i] = static_cast<double>(coincidences[i]) * pair_norm;
  }
  return maps;
}

void write_grid_csv(std::ostream &os, const std::vector<double> &values, int rows,
                    int cols) {
  if (rows < 1 || cols < 1 ||
      values.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw Error(ErrorCode::LengthMismatch, "grid",
                "rows*cols must equal the number of values");
  os << "rows,cols\n" << rows << "," << cols << "\n";
  char buf[40];
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", values[static_cast<std::size_t>(r) * cols + c]);
      os << buf << (c + 1 == cols ? "\n" : ",");
    }
  }
}

void write_grid_csv_file(const std::string &path, const std::vector<double> &values,
                         int rows, int cols) {
  std::ofstream os(path);
  if (!os)
    throw Error(ErrorCode::Io, "path", "cannot open grid file for writing: " + path);
  write_grid_csv(os, values, rows, cols);
  if (!os)
    throw Error(ErrorCode::Io, "path", "short write to grid file: " + path);
}

} // namespace dbsim::speckle
