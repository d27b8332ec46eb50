#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "dbsim/dbsim.h"

TEST_SUITE_BEGIN("capi");

namespace {

dbsim_params *table_params(int dimension) {
  dbsim_params *p = nullptr;
  REQUIRE(dbsim_params_create(&p, dimension, 0.52, 300.0, 5e-7, 0.2, 2) == DBSIM_OK);
  REQUIRE(p != nullptr);
  return p;
}

} // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(std::strlen(dbsim_version()) > 0);
  CHECK(dbsim_last_error() != nullptr);
}

TEST_CASE("parameter lifecycle, getters and rejection") {
  dbsim_params *p = table_params(16);
  CHECK(dbsim_params_dimension(p) == 16);
  CHECK(dbsim_params_efficiency(p) == 0.52);
  CHECK(dbsim_params_dark_rate(p) == 300.0);
  CHECK(dbsim_params_gate_time(p) == 5e-7);
  CHECK(dbsim_params_mean_photon_number(p) == 0.2);
  CHECK(dbsim_params_basis_count(p) == 2);
  dbsim_params_destroy(p);

  dbsim_params *bad = nullptr;
  CHECK(dbsim_params_create(&bad, 1, 0.5, 300.0, 5e-7, 0.2, 2) ==
        DBSIM_ERR_OUT_OF_RANGE);
  CHECK(bad == nullptr);
  CHECK(std::string(dbsim_last_error()).find("dimension") != std::string::npos);

  CHECK(dbsim_params_create(nullptr, 16, 0.5, 300.0, 5e-7, 0.2, 2) ==
        DBSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("analytics surface matches expectations") {
  dbsim_params *p = table_params(16);

  double pg = -1.0;
  REQUIRE(dbsim_p_gamma(p, &pg) == DBSIM_OK);
  CHECK(pg == doctest::Approx(2.2474706474e-3).epsilon(1e-9));

  dbsim_error_budget dbs{};
  REQUIRE(dbsim_dbs_budget(p, &dbs) == DBSIM_OK);
  CHECK(dbs.ratio == doctest::Approx(6.2878664091e-2).epsilon(1e-9));
  CHECK(dbs.ratio ==
        doctest::Approx((dbs.p_be + dbs.p_ee) / dbs.p_corr).epsilon(1e-12));

  dbsim_error_budget ipbe{};
  REQUIRE(dbsim_ipbe_budget(p, &ipbe) == DBSIM_OK);
  CHECK(ipbe.p_be == 0.0);
  CHECK(ipbe.p_corr > 0.0);

  double form_a = 0.0, form_b = 0.0;
  REQUIRE(dbsim_corr_equivalence(p, &form_a, &form_b) == DBSIM_OK);
  CHECK(std::fabs(form_a - form_b) <= 1e-12 * form_a);

  dbsim_eve_budget eve{};
  REQUIRE(dbsim_eve_budget_get(p, DBSIM_MODE_DBS, &eve) == DBSIM_OK);
  CHECK(eve.p_mult / eve.p_phot == doctest::Approx(0.09666888677).epsilon(1e-9));

  dbsim_params_destroy(p);

  // degenerate lambda reports the dedicated status
  dbsim_params *vac = nullptr;
  REQUIRE(dbsim_params_create(&vac, 16, 0.52, 300.0, 5e-7, 0.0, 2) == DBSIM_OK);
  CHECK(dbsim_dbs_budget(vac, &dbs) == DBSIM_ERR_DEGENERATE);
  CHECK(dbsim_eve_budget_get(vac, DBSIM_MODE_DBS, &eve) == DBSIM_ERR_DEGENERATE);
  dbsim_params_destroy(vac);
}

TEST_CASE("combinatorics surface") {
  char *decimal = nullptr;
  REQUIRE(dbsim_pairing_combinations(8, &decimal) == DBSIM_OK);
  CHECK(std::string(decimal) == "2520"); // 8!/2^4
  dbsim_string_free(decimal);

  CHECK(dbsim_pairing_combinations(7, &decimal) == DBSIM_ERR_ODD_LENGTH);

  double mantissa = 0.0;
  int exponent = 0;
  REQUIRE(dbsim_pairing_inverse_sci(100, &mantissa, &exponent) == DBSIM_OK);
  CHECK(exponent == -143);
  CHECK(mantissa == doctest::Approx(1.2064133).epsilon(1e-5));

  double guess = 0.0;
  REQUIRE(dbsim_basis_guess_probability(100, 2, &guess) == DBSIM_OK);
  CHECK(guess == doctest::Approx(7.888609052210118e-31).epsilon(1e-12));
}

TEST_CASE("crossover and calibration surface") {
  dbsim_params *p = table_params(16);
  int found = 0, dim = 0;
  REQUIRE(dbsim_find_crossover_dimension(p, 100, &found, &dim) == DBSIM_OK);
  CHECK(found == 1);
  CHECK(dim == 20);
  dbsim_params_destroy(p);

  double tau = 0.0;
  REQUIRE(dbsim_calibrate_tau(500.0, 0.2, 16, 0.45, 1e-3, &tau) == DBSIM_OK);
  CHECK(tau > 0.0);

  dbsim_params *fig = nullptr;
  REQUIRE(dbsim_params_create(&fig, 16, 0.55, 500.0, tau, 0.2, 2) == DBSIM_OK);
  double loss = 0.0;
  int dbs_dominates = 0;
  REQUIRE(dbsim_find_crossover_loss(fig, 16, 0.0, &found, &loss, &dbs_dominates) ==
          DBSIM_OK);
  CHECK(found == 1);
  CHECK(loss == doctest::Approx(0.45).epsilon(0.02));
  dbsim_params_destroy(fig);
}

TEST_CASE("sessions run deterministically through the C surface") {
  dbsim_params *p = table_params(16);
  dbsim_run_options opt{};
  opt.seed = 9;
  opt.threads = 2;

  dbsim_session_tally a{}, b{};
  REQUIRE(dbsim_run_dbs_session(p, 50000, &opt, &a) == DBSIM_OK);
  opt.threads = 1;
  REQUIRE(dbsim_run_dbs_session(p, 50000, &opt, &b) == DBSIM_OK);
  CHECK(a.correct == b.correct);
  CHECK(a.basis_error == b.basis_error);
  CHECK(a.lost == b.lost);
  CHECK(a.twin_count == 50000);
  CHECK(a.p_corr_err > 0.0);

  dbsim_session_tally ipbe{};
  REQUIRE(dbsim_run_ipbe_session(p, 20000, &opt, &ipbe) == DBSIM_OK);
  CHECK(ipbe.twin_count == 20000);

  dbsim_oscar_tally oscar{};
  REQUIRE(dbsim_run_oscar_pns(p, 20000, &opt, &oscar) == DBSIM_OK);
  CHECK(oscar.extracted_pairs <= oscar.intercepted_multi);
  dbsim_params_destroy(p);
}

TEST_CASE("speckle surface: fiber, mask, maps, files") {
  dbsim_fiber *fiber = nullptr;
  REQUIRE(dbsim_fiber_create(&fiber, 64, 36, 77) == DBSIM_OK);
  CHECK(dbsim_fiber_segments(fiber) == 64);
  CHECK(dbsim_fiber_modes(fiber) == 36);

  dbsim_mask *mask = nullptr;
  double enhancement = 0.0;
  REQUIRE(dbsim_optimize_focus(fiber, 5, DBSIM_BASIS_COMPUTATIONAL, 3, 16, &mask,
                               &enhancement) == DBSIM_OK);
  CHECK(enhancement > 5.0);

  std::vector<double> matched(36, 0.0), crossed(36, 0.0);
  REQUIRE(dbsim_measure_intensity(fiber, mask, DBSIM_BASIS_COMPUTATIONAL,
                                  matched.data()) == DBSIM_OK);
  REQUIRE(dbsim_delocalized_distribution(fiber, mask, crossed.data()) == DBSIM_OK);
  double sum = 0.0;
  for (double v : matched)
    sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(matched[5] > crossed[5]);

  std::vector<double> pd(36, 0.0), pd2(36, 0.0);
  REQUIRE(dbsim_sample_pd_pd2(matched.data(), matched.size(), 20000, 4, pd.data(),
                              pd2.data()) == DBSIM_OK);
  CHECK(pd[5] > 0.5);

  const char *path = "capi_fiber_roundtrip.txt";
  REQUIRE(dbsim_fiber_save(fiber, path) == DBSIM_OK);
  dbsim_fiber *loaded = nullptr;
  REQUIRE(dbsim_fiber_load(&loaded, path) == DBSIM_OK);
  CHECK(dbsim_fiber_modes(loaded) == 36);
  dbsim_fiber_destroy(loaded);
  std::remove(path);

  CHECK(dbsim_fiber_load(&loaded, "missing_fiber.txt") == DBSIM_ERR_IO);

  dbsim_mask_destroy(mask);
  dbsim_fiber_destroy(fiber);
}

TEST_SUITE_END();
