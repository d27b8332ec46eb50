#include "analytics/budgets.hpp"

#include <cmath>
#include <limits>

namespace dbsim::analytics {

namespace {

void require_two_bases(const core::ChannelParams &params) {
  if (params.basis_count != 2)
    throw Error(ErrorCode::InvalidArgument, "basis_count",
                "closed-form budgets are only derived for basis_count == 2");
}

[[noreturn]] void degenerate(const char *what) {
  throw Error(ErrorCode::DegenerateDenominator, "p_corr", what);
}

} // namespace

double p_gamma(const core::ChannelParams &params) {
  return -std::expm1(-params.dark_exposure());
}

double photon_probability(double mean_photon_number) {
  return -std::expm1(-mean_photon_number);
}

double multi_photon_probability(double mean_photon_number) {
  // 1 − e^{−λ}(1+λ) = e^{−λ}(e^{λ} − 1 − λ), stable for small λ.
  return std::exp(-mean_photon_number) *
         (std::expm1(mean_photon_number) - mean_photon_number);
}

ErrorBudget dbs_budget(const core::ChannelParams &params) {
  require_two_bases(params);
  const double eta = params.efficiency;
  const double d = static_cast<double>(params.dimension);
  const double q = photon_probability(params.mean_photon_number);
  const double survive = std::exp(-2.0 * params.dark_exposure());
  const double pg = p_gamma(params);
  const double lam = params.mean_photon_number;

  ErrorBudget b;
  b.p_corr = 0.25 * eta * eta * q * q * survive;
  b.p_be = 0.25 * eta * eta * q * q / d;
  b.p_ee = std::exp(-2.0 * lam) * pg * pg / d +
           q * q * (1.0 - eta) * (1.0 - eta) * pg * pg / d;
  if (b.p_corr <= 0.0)
    degenerate("DBS P_Corr is zero (empty pulses or fully lossy channel)");
  b.ratio = (b.p_be + b.p_ee) / b.p_corr;
  return b;
}

ErrorBudget ipbe_budget(const core::ChannelParams &params) {
  require_two_bases(params);
  const double eta = params.efficiency;
  const double q = photon_probability(params.mean_photon_number);
  const double pg = p_gamma(params);
  const double lam = params.mean_photon_number;

  ErrorBudget b;
  b.p_corr = 0.5 * eta * q * (1.0 - pg);
  b.p_be = 0.0; // wrong-basis slots are always removed in classical sifting
  b.p_ee = std::exp(-lam) * pg + q * (1.0 - eta) * pg;
  if (b.p_corr <= 0.0)
    degenerate("IPBE P_Corr is zero (empty pulses or fully lossy channel)");
  b.ratio = b.p_ee / b.p_corr;
  return b;
}

std::pair<double, double> dbs_corr_equivalence(const core::ChannelParams &params) {
  const double eta = params.efficiency;
  const double q = photon_probability(params.mean_photon_number);
  const double exponential_form =
      0.25 * eta * eta * q * q * std::exp(-2.0 * params.dark_exposure());
  const double survival = 1.0 - p_gamma(params);
  const double pgamma_form = 0.25 * eta * eta * q * q * survival * survival;
  return {exponential_form, pgamma_form};
}

EveBudget eve_budget(const core::ChannelParams &params, Mode mode) {
  require_two_bases(params);
  if (params.mean_photon_number <= 0.0)
    throw Error(ErrorCode::DegenerateDenominator, "mean_photon_number",
                "eavesdropper budget needs lambda > 0");
  EveBudget e;
  e.p_mult = multi_photon_probability(params.mean_photon_number);
  e.p_phot = photon_probability(params.mean_photon_number);
  const double split = e.p_mult / e.p_phot;
  const double eta = params.efficiency;
  const double survive = std::exp(-params.dark_exposure());
  if (mode == Mode::Dbs) {
    e.p_b = 0.25 * eta * eta * survive * survive;
    e.p_o = 0.5 * split * split;
  } else {
    e.p_b = 0.5 * eta * survive;
    e.p_o = split;
  }
  e.ratio = e.p_o > 0.0 ? e.p_b / e.p_o
                        : std::numeric_limits<double>::infinity();
  return e;
}

} // namespace dbsim::analytics
