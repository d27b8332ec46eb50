/* dbsim — analytics and Monte Carlo simulation of two-photon data-basis-
 * shuffling (DBS) quantum communication versus single-photon bit encoding
 * (IPBE), plus a multimode-fiber speckle physical layer.
 *
 * C API of the shared library. All handles are opaque; every function
 * returns a dbsim_status code and writes results through out-parameters.
 * On failure, dbsim_last_error() returns a thread-local description.
 */
#ifndef DBSIM_H
#define DBSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum dbsim_status {
  DBSIM_OK = 0,
  DBSIM_ERR_OUT_OF_RANGE = 1,
  DBSIM_ERR_DEGENERATE = 2,     /* denominator probability is zero */
  DBSIM_ERR_ODD_LENGTH = 3,     /* pairing needs an even stream */
  DBSIM_ERR_NO_SOLUTION = 4,    /* calibration target unreachable */
  DBSIM_ERR_LENGTH_MISMATCH = 5,
  DBSIM_ERR_INVALID_ARGUMENT = 6,
  DBSIM_ERR_IO = 7,
  DBSIM_ERR_INTERNAL = 8
} dbsim_status;

typedef enum dbsim_basis {
  DBSIM_BASIS_COMPUTATIONAL = 0,
  DBSIM_BASIS_FOURIER = 1
} dbsim_basis;

typedef enum dbsim_mode { DBSIM_MODE_DBS = 0, DBSIM_MODE_IPBE = 1 } dbsim_mode;

/* Opaque handles. */
typedef struct dbsim_params dbsim_params;
typedef struct dbsim_fiber dbsim_fiber;
typedef struct dbsim_mask dbsim_mask;

const char *dbsim_version(void);
/* Thread-local message describing the most recent failure in this thread. */
const char *dbsim_last_error(void);
void dbsim_string_free(char *s);

/* ------------------------------------------------------------------ */
/* Channel parameters                                                  */

/* Validates and allocates a parameter set; rejects out-of-range values
 * naming the offending field in dbsim_last_error(). basis_count must be >= 2
 * (the closed forms below additionally require exactly 2). */
dbsim_status dbsim_params_create(dbsim_params **out, int dimension, double efficiency,
                                 double dark_rate, double gate_time,
                                 double mean_photon_number, int basis_count);
void dbsim_params_destroy(dbsim_params *p);

int dbsim_params_dimension(const dbsim_params *p);
double dbsim_params_efficiency(const dbsim_params *p);
double dbsim_params_dark_rate(const dbsim_params *p);
double dbsim_params_gate_time(const dbsim_params *p);
double dbsim_params_mean_photon_number(const dbsim_params *p);
int dbsim_params_basis_count(const dbsim_params *p);

/* ------------------------------------------------------------------ */
/* Closed-form analytics                                               */

typedef struct dbsim_error_budget {
  double p_corr;
  double p_be;
  double p_ee;
  double ratio; /* (p_be + p_ee) / p_corr */
} dbsim_error_budget;

typedef struct dbsim_eve_budget {
  double p_b;    /* legitimate receiver extraction probability   */
  double p_o;    /* photon-number-splitting extraction probability */
  double ratio;  /* p_b / p_o; +inf when p_o underflows to zero  */
  double p_mult; /* P(n >= 2) per pulse                          */
  double p_phot; /* P(n >= 1) per pulse                          */
} dbsim_eve_budget;

/* P_gamma = 1 - exp(-gamma tau (D-1)). */
dbsim_status dbsim_p_gamma(const dbsim_params *p, double *out);

dbsim_status dbsim_dbs_budget(const dbsim_params *p, dbsim_error_budget *out);
dbsim_status dbsim_ipbe_budget(const dbsim_params *p, dbsim_error_budget *out);

/* Both published forms of the DBS correct-detection probability; they agree
 * to better than 1e-12 relative for any valid parameters. */
dbsim_status dbsim_corr_equivalence(const dbsim_params *p, double *exponential_form,
                                    double *survival_form);

dbsim_status dbsim_eve_budget_get(const dbsim_params *p, dbsim_mode mode,
                                  dbsim_eve_budget *out);

/* Exact pairing-combination count for an even stream of n photons, as a
 * malloc'd decimal string (free with dbsim_string_free). */
dbsim_status dbsim_pairing_combinations(int n, char **decimal_out);
/* 1/C in scientific parts: 1/C = mantissa * 10^exponent, mantissa in [1,10). */
dbsim_status dbsim_pairing_inverse_sci(int n, double *mantissa, int *exponent);
/* basis_count^(-n). */
dbsim_status dbsim_basis_guess_probability(int n, int basis_count, double *out);

/* Smallest dimension in [2, d_max] where the DBS error ratio drops strictly
 * below the IPBE one; *found = 0 when there is none. */
dbsim_status dbsim_find_crossover_dimension(const dbsim_params *p, int d_max,
                                            int *found, int *dimension_out);

/* Loss (1-eta) where the two error ratios cross, scanned on [0, loss_max]
 * (pass loss_max <= 0 for the default 0.9) and bisected to 1e-6. When no
 * crossing exists, *found = 0 and *dbs_dominates reports the winning side. */
dbsim_status dbsim_find_crossover_loss(const dbsim_params *p, int dimension,
                                       double loss_max, int *found, double *loss_out,
                                       int *dbs_dominates);

/* Gate time placing the loss crossover at target_loss for the given
 * dimension, dark rate and mean photon number (bisection over (0, tau_max]).
 */
dbsim_status dbsim_calibrate_tau(double dark_rate, double mean_photon_number,
                                 int dimension, double target_loss, double tau_max,
                                 double *tau_out);

/* ------------------------------------------------------------------ */
/* Monte Carlo sessions                                                */

typedef struct dbsim_session_tally {
  uint64_t twin_count;
  uint64_t correct;
  uint64_t basis_error;
  uint64_t empty_error;
  uint64_t lost;
  uint64_t discarded_mixed;
  uint64_t discarded_mismatch;
  double p_corr_hat, p_corr_err; /* empirical rates with Wilson errors */
  double p_be_hat, p_be_err;
  double p_ee_hat, p_ee_err;
  double ratio_hat;
} dbsim_session_tally;

typedef struct dbsim_oscar_tally {
  uint64_t twin_count;
  uint64_t both_loaded;
  uint64_t intercepted_multi;
  uint64_t extracted_pairs;
  uint64_t bob_success;
  double p_b_hat;
  double p_o_hat;
} dbsim_oscar_tally;

typedef struct dbsim_run_options {
  uint64_t seed;
  int force_single_photon; /* nonzero: every pulse carries exactly one photon */
  unsigned threads;        /* 0 = hardware concurrency */
  /* Optional non-uniform wrong-basis detection distribution, one weight per
   * detector (length = dimension); NULL selects the uniform model. */
  const double *delocalized;
  size_t delocalized_len;
} dbsim_run_options;

/* Identical (seed, options) always reproduce identical tallies, independent
 * of the thread count. */
dbsim_status dbsim_run_dbs_session(const dbsim_params *p, uint64_t twins,
                                   const dbsim_run_options *options,
                                   dbsim_session_tally *out);
dbsim_status dbsim_run_ipbe_session(const dbsim_params *p, uint64_t slots,
                                    const dbsim_run_options *options,
                                    dbsim_session_tally *out);
dbsim_status dbsim_run_oscar_pns(const dbsim_params *p, uint64_t twins,
                                 const dbsim_run_options *options,
                                 dbsim_oscar_tally *out);

/* ------------------------------------------------------------------ */
/* Speckle physical layer                                              */

dbsim_status dbsim_fiber_create(dbsim_fiber **out, int segments, int modes,
                                uint64_t seed);
void dbsim_fiber_destroy(dbsim_fiber *f);
dbsim_status dbsim_fiber_save(const dbsim_fiber *f, const char *path);
dbsim_status dbsim_fiber_load(dbsim_fiber **out, const char *path);
int dbsim_fiber_segments(const dbsim_fiber *f);
int dbsim_fiber_modes(const dbsim_fiber *f);

/* Sequential segment-phase optimization toward target_mode in the given
 * basis; returns the mask handle and the enhancement factor (focused target
 * intensity over mean unoptimized intensity). */
dbsim_status dbsim_optimize_focus(const dbsim_fiber *f, int target_mode,
                                  dbsim_basis basis, int sweeps, int phase_count,
                                  dbsim_mask **mask_out, double *enhancement_out);
void dbsim_mask_destroy(dbsim_mask *m);

/* Normalized per-pixel detection probabilities of the prepared mask read out
 * in measurement_basis; out must hold `modes` doubles. */
dbsim_status dbsim_measure_intensity(const dbsim_fiber *f, const dbsim_mask *m,
                                     dbsim_basis measurement_basis, double *out);
/* The conjugate-basis (wrong-basis) read-out of the mask. */
dbsim_status dbsim_delocalized_distribution(const dbsim_fiber *f, const dbsim_mask *m,
                                            double *out);

/* Draws photon pairs from a normalized distribution and returns per-pixel
 * single (pd) and same-pixel pair (pd2) frequencies; pd/pd2 hold `len`
 * doubles. */
dbsim_status dbsim_sample_pd_pd2(const double *distribution, size_t len,
                                 uint64_t photon_pairs, uint64_t seed, double *pd,
                                 double *pd2);

/* CSV grid export, `rows,cols` header then row-major %.17g data rows. */
dbsim_status dbsim_grid_csv_write(const char *path, const double *values, int rows,
                                  int cols);

#if defined(__cplusplus)
} /* extern "C" */
#endif

#endif /* DBSIM_H */
