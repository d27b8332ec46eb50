#include "dbsim/dbsim.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "analytics/budgets.hpp"
#include "analytics/combinatorics.hpp"
#include "analytics/crossover.hpp"
#include "channel/session.hpp"
#include "core/params.hpp"
#include "protocol/scoring.hpp"
#include "speckle/intensity.hpp"
#include "speckle/optimize.hpp"

namespace {

thread_local std::string g_last_error;

dbsim_status map_code(dbsim::ErrorCode code) {
  using dbsim::ErrorCode;
  switch (code) {
  case ErrorCode::OutOfRange:
    return DBSIM_ERR_OUT_OF_RANGE;
  case ErrorCode::DegenerateDenominator:
    return DBSIM_ERR_DEGENERATE;
  case ErrorCode::OddLength:
    return DBSIM_ERR_ODD_LENGTH;
  case ErrorCode::NoSolution:
    return DBSIM_ERR_NO_SOLUTION;
  case ErrorCode::LengthMismatch:
    return DBSIM_ERR_LENGTH_MISMATCH;
  case ErrorCode::InvalidArgument:
    return DBSIM_ERR_INVALID_ARGUMENT;
  case ErrorCode::Io:
    return DBSIM_ERR_IO;
  }
  return DBSIM_ERR_INTERNAL;
}

template <typename Fn> dbsim_status guarded(Fn &&fn) {
  try {
    fn();
    return DBSIM_OK;
  } catch (const dbsim::Error &e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return DBSIM_ERR_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return DBSIM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DBSIM_ERR_INTERNAL;
  }
}

dbsim_status invalid(const char *message) {
  g_last_error = message;
  return DBSIM_ERR_INVALID_ARGUMENT;
}

dbsim::core::Basis to_basis(dbsim_basis b) {
  return b == DBSIM_BASIS_FOURIER ? dbsim::core::Basis::Fourier
                                  : dbsim::core::Basis::Computational;
}

dbsim::channel::RunOptions to_options(const dbsim_run_options *options) {
  dbsim::channel::RunOptions opt;
  if (options != nullptr) {
    opt.seed = options->seed;
    opt.force_single_photon = options->force_single_photon != 0;
    opt.threads = options->threads;
    if (options->delocalized != nullptr && options->delocalized_len > 0)
      opt.delocalized_pdf.assign(options->delocalized,
                                 options->delocalized + options->delocalized_len);
  }
  return opt;
}

void fill_tally(const dbsim::channel::SessionTally &t, dbsim_session_tally *out) {
  using dbsim::protocol::wilson_halfwidth;
  out->twin_count = t.twin_count;
  out->correct = t.correct;
  out->basis_error = t.basis_error;
  out->empty_error = t.empty_error;
  out->lost = t.lost;
  out->discarded_mixed = t.discarded_mixed;
  out->discarded_mismatch = t.discarded_mismatch;
  out->p_corr_hat = t.p_corr_hat();
  out->p_be_hat = t.p_be_hat();
  out->p_ee_hat = t.p_ee_hat();
  out->ratio_hat = t.ratio_hat();
  out->p_corr_err = wilson_halfwidth(t.correct, t.twin_count);
  out->p_be_err = wilson_halfwidth(t.basis_error, t.twin_count);
  out->p_ee_err = wilson_halfwidth(t.empty_error, t.twin_count);
}

} // namespace

struct dbsim_params {
  dbsim::core::ChannelParams v;
};

struct dbsim_fiber {
  dbsim::speckle::TransferMatrix v;
};

struct dbsim_mask {
  dbsim::speckle::SlmMask v;
};

extern "C" {

const char *dbsim_version(void) { return "dbsim 1.0.0"; }

const char *dbsim_last_error(void) { return g_last_error.c_str(); }

void dbsim_string_free(char *s) { std::free(s); }

dbsim_status dbsim_params_create(dbsim_params **out, int dimension, double efficiency,
                                 double dark_rate, double gate_time,
                                 double mean_photon_number, int basis_count) {
  if (out == nullptr)
    return invalid("out pointer is null");
  *out = nullptr;
  return guarded([&] {
    dbsim::core::ChannelParams p;
    p.dimension = dimension;
    p.efficiency = efficiency;
    p.dark_rate = dark_rate;
    p.gate_time = gate_time;
    p.mean_photon_number = mean_photon_number;
    p.basis_count = basis_count;
    *out = new dbsim_params{dbsim::core::validate_params(p)};
  });
}

void dbsim_params_destroy(dbsim_params *p) { delete p; }

int dbsim_params_dimension(const dbsim_params *p) { return p->v.dimension; }
double dbsim_params_efficiency(const dbsim_params *p) { return p->v.efficiency; }
double dbsim_params_dark_rate(const dbsim_params *p) { return p->v.dark_rate; }
double dbsim_params_gate_time(const dbsim_params *p) { return p->v.gate_time; }
double dbsim_params_mean_photon_number(const dbsim_params *p) {
  return p->v.mean_photon_number;
}
int dbsim_params_basis_count(const dbsim_params *p) { return p->v.basis_count; }

dbsim_status dbsim_p_gamma(const dbsim_params *p, double *out) {
  if (p == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] { *out = dbsim::analytics::p_gamma(p->v); });
}

dbsim_status dbsim_dbs_budget(const dbsim_params *p, dbsim_error_budget *out) {
  if (p == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto b = dbsim::analytics::dbs_budget(p->v);
    *out = {b.p_corr, b.p_be, b.p_ee, b.ratio};
  });
}

dbsim_status dbsim_ipbe_budget(const dbsim_params *p, dbsim_error_budget *out) {
  if (p == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto b = dbsim::analytics::ipbe_budget(p->v);
    *out = {b.p_corr, b.p_be, b.p_ee, b.ratio};
  });
}

dbsim_status dbsim_corr_equivalence(const dbsim_params *p, double *exponential_form,
                                    double *survival_form) {
  if (p == nullptr || exponential_form == nullptr || survival_form == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto [a, b] = dbsim::analytics::dbs_corr_equivalence(p->v);
    *exponential_form = a;
    *survival_form = b;
  });
}

dbsim_status dbsim_eve_budget_get(const dbsim_params *p, dbsim_mode mode,
                                  dbsim_eve_budget *out) {
  if (p == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto e = dbsim::analytics::eve_budget(
        p->v, mode == DBSIM_MODE_IPBE ? dbsim::analytics::Mode::Ipbe
                                      : dbsim::analytics::Mode::Dbs);
    *out = {e.p_b, e.p_o, e.ratio, e.p_mult, e.p_phot};
  });
}

dbsim_status dbsim_pairing_combinations(int n, char **decimal_out) {
  if (decimal_out == nullptr)
    return invalid("null argument");
  *decimal_out = nullptr;
  return guarded([&] {
    const std::string s = dbsim::analytics::pairing_combinations(n).to_string();
    char *buf = static_cast<char *>(std::malloc(s.size() + 1));
    if (buf == nullptr)
      throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *decimal_out = buf;
  });
}

dbsim_status dbsim_pairing_inverse_sci(int n, double *mantissa, int *exponent) {
  if (mantissa == nullptr || exponent == nullptr)
    return invalid("null argument");
  return guarded([&] { dbsim::analytics::pairing_inverse_sci(n, *mantissa, *exponent); });
}

dbsim_status dbsim_basis_guess_probability(int n, int basis_count, double *out) {
  if (out == nullptr)
    return invalid("null argument");
  return guarded(
      [&] { *out = dbsim::analytics::basis_guess_probability(n, basis_count); });
}

dbsim_status dbsim_find_crossover_dimension(const dbsim_params *p, int d_max,
                                            int *found, int *dimension_out) {
  if (p == nullptr || found == nullptr || dimension_out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto d = dbsim::analytics::find_crossover_dimension(p->v, d_max);
    *found = d.has_value() ? 1 : 0;
    *dimension_out = d.value_or(0);
  });
}

dbsim_status dbsim_find_crossover_loss(const dbsim_params *p, int dimension,
                                       double loss_max, int *found, double *loss_out,
                                       int *dbs_dominates) {
  if (p == nullptr || found == nullptr || loss_out == nullptr || dbs_dominates == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto c = loss_max > 0.0
                       ? dbsim::analytics::find_crossover_loss(p->v, dimension, loss_max)
                       : dbsim::analytics::find_crossover_loss(p->v, dimension);
    *found = c.found ? 1 : 0;
    *loss_out = c.loss;
    *dbs_dominates = c.dbs_dominates ? 1 : 0;
  });
}

dbsim_status dbsim_calibrate_tau(double dark_rate, double mean_photon_number,
                                 int dimension, double target_loss, double tau_max,
                                 double *tau_out) {
  if (tau_out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    *tau_out = dbsim::analytics::calibrate_tau(dark_rate, mean_photon_number,
                                               dimension, target_loss, tau_max);
  });
}

dbsim_status dbsim_run_dbs_session(const dbsim_params *p, uint64_t twins,
                                   const dbsim_run_options *options,
                                   dbsim_session_tally *out) {
  if (p == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto t = dbsim::channel::run_dbs_session(twins, p->v, to_options(options));
    fill_tally(t, out);
  });
}

dbsim_status dbsim_run_ipbe_session(const dbsim_params *p, uint64_t slots,
                                    const dbsim_run_options *options,
                                    dbsim_session_tally *out) {
  if (p == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto t = dbsim::channel::run_ipbe_session(slots, p->v, to_options(options));
    fill_tally(t, out);
  });
}

dbsim_status dbsim_run_oscar_pns(const dbsim_params *p, uint64_t twins,
                                 const dbsim_run_options *options,
                                 dbsim_oscar_tally *out) {
  if (p == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto t = dbsim::channel::run_oscar_pns(twins, p->v, to_options(options));
    out->twin_count = t.twin_count;
    out->both_loaded = t.both_loaded;
    out->intercepted_multi = t.intercepted_multi;
    out->extracted_pairs = t.extracted_pairs;
    out->bob_success = t.bob_success;
    out->p_b_hat = t.p_b_hat();
    out->p_o_hat = t.p_o_hat();
  });
}

dbsim_status dbsim_fiber_create(dbsim_fiber **out, int segments, int modes,
                                uint64_t seed) {
  if (out == nullptr)
    return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new dbsim_fiber{dbsim::speckle::generate_fiber(segments, modes, seed)};
  });
}

void dbsim_fiber_destroy(dbsim_fiber *f) { delete f; }

dbsim_status dbsim_fiber_save(const dbsim_fiber *f, const char *path) {
  if (f == nullptr || path == nullptr)
    return invalid("null argument");
  return guarded([&] { dbsim::speckle::save_fiber(f->v, path); });
}

dbsim_status dbsim_fiber_load(dbsim_fiber **out, const char *path) {
  if (out == nullptr || path == nullptr)
    return invalid("null argument");
  *out = nullptr;
  return guarded([&] { *out = new dbsim_fiber{dbsim::speckle::load_fiber(path)}; });
}

int dbsim_fiber_segments(const dbsim_fiber *f) { return f->v.segments; }
int dbsim_fiber_modes(const dbsim_fiber *f) { return f->v.modes; }

dbsim_status dbsim_optimize_focus(const dbsim_fiber *f, int target_mode,
                                  dbsim_basis basis, int sweeps, int phase_count,
                                  dbsim_mask **mask_out, double *enhancement_out) {
  if (f == nullptr || mask_out == nullptr || enhancement_out == nullptr)
    return invalid("null argument");
  *mask_out = nullptr;
  return guarded([&] {
    auto r = dbsim::speckle::optimize_focus(f->v, target_mode, to_basis(basis), sweeps,
                                            phase_count);
    *enhancement_out = r.enhancement;
    *mask_out = new dbsim_mask{std::move(r.mask)};
  });
}

void dbsim_mask_destroy(dbsim_mask *m) { delete m; }

dbsim_status dbsim_measure_intensity(const dbsim_fiber *f, const dbsim_mask *m,
                                     dbsim_basis measurement_basis, double *out) {
  if (f == nullptr || m == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto map =
        dbsim::speckle::measure_intensity(f->v, m->v, to_basis(measurement_basis));
    std::memcpy(out, map.p.data(), map.p.size() * sizeof(double));
  });
}

dbsim_status dbsim_delocalized_distribution(const dbsim_fiber *f, const dbsim_mask *m,
                                            double *out) {
  if (f == nullptr || m == nullptr || out == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const auto map = dbsim::speckle::delocalized_distribution(f->v, m->v);
    std::memcpy(out, map.p.data(), map.p.size() * sizeof(double));
  });
}

dbsim_status dbsim_sample_pd_pd2(const double *distribution, size_t len,
                                 uint64_t photon_pairs, uint64_t seed, double *pd,
                                 double *pd2) {
  if (distribution == nullptr || pd == nullptr || pd2 == nullptr || len == 0)
    return invalid("null argument");
  return guarded([&] {
    dbsim::speckle::IntensityMap map;
    map.p.assign(distribution, distribution + len);
    double total = 0.0;
    for (double v : map.p) {
      if (v < 0.0)
        dbsim::throw_out_of_range("distribution", "negative weight");
      total += v;
    }
    if (total <= 0.0)
      dbsim::throw_out_of_range("distribution", "distribution sums to zero");
    for (auto &v : map.p)
      v /= total;
    dbsim::core::RandomSource rng(seed, 0);
    const auto maps = dbsim::speckle::sample_pd_pd2(map, photon_pairs, rng);
    std::memcpy(pd, maps.pd.data(), len * sizeof(double));
    std::memcpy(pd2, maps.pd2.data(), len * sizeof(double));
  });
}

dbsim_status dbsim_grid_csv_write(const char *path, const double *values, int rows,
                                  int cols) {
  if (path == nullptr || values == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const std::vector<double> v(values,
                                values + static_cast<std::size_t>(rows) *
                                             static_cast<std::size_t>(cols));
    dbsim::speckle::write_grid_csv_file(path, v, rows, cols);
  });
}

} // extern "C"
