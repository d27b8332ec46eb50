#include "analytics/crossover.hpp"

#include <cmath>

namespace dbsim::analytics {

namespace {

// ipbe.ratio − dbs.ratio: positive where DBS is the better scheme.
double margin(const core::ChannelParams &p) {
  return ipbe_budget(p).ratio - dbs_budget(p).ratio;
}

core::ChannelParams at_loss(core::ChannelParams p, double loss) {
  p.efficiency = 1.0 - loss;
  return p;
}

} // namespace

std::optional<int> find_crossover_dimension(const core::ChannelParams &base, int d_max) {
  core::ChannelParams p = base;
  for (int d = 2; d <= d_max; ++d) {
    p.dimension = d;
    if (dbs_budget(p).ratio < ipbe_budget(p).ratio)
      return d;
  }
  return std::nullopt;
}

LossCrossover find_crossover_loss(const core::ChannelParams &base, int dimension,
                                  double loss_max) {
  core::ChannelParams p = core::validate_params(base);
  p.dimension = dimension;
  p = core::validate_params(p);

  constexpr double kStep = 1e-3;
  constexpr double kTol = 1e-6;

  double lo = 0.0;
  double f_lo = margin(at_loss(p, lo));
  bool dbs_everywhere = f_lo >= 0.0;
  bool ipbe_everywhere = f_lo < 0.0;

  double hi = lo;
  bool bracketed = false;
  for (double loss = kStep; loss <= loss_max + 0.5 * kStep; loss += kStep) {
    if (loss > loss_max)
      loss = loss_max;
    const double f = margin(at_loss(p, loss));
    if (f >= 0.0)
      ipbe_everywhere = false;
    else
      dbs_everywhere = false;
    if ((f_lo < 0.0) != (f < 0.0)) {
      hi = loss;
      bracketed = true;
      break;
    }
    lo = loss;
    f_lo = f;
  }

  LossCrossover out;
  if (!bracketed) {
    out.found = false;
    out.dbs_dominates = dbs_everywhere && !ipbe_everywhere;
    return out;
  }
  while (hi - lo > kTol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = margin(at_loss(p, mid));
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  out.found = true;
  out.loss = 0.5 * (lo + hi);
  out.dbs_dominates = false;
  return out;
}

double calibrate_tau(double dark_rate, double mean_photon_number, int dimension,
                     double target_loss, double tau_max) {
  if (!(target_loss > 0.0) || target_loss >= 1.0)
    throw Error(ErrorCode::NoSolution, "target_loss",
                "crossover target must lie strictly inside (0,1)");

  core::ChannelParams base;
  base.dimension = dimension;
  base.dark_rate = dark_rate;
  base.mean_photon_number = mean_photon_number;
  base.efficiency = 0.5; // placeholder, find_crossover_loss sweeps it

  // Crossover loss as a function of tau; +2 encodes "IPBE dominates the whole
  // range" (crossover beyond reach), -1 encodes "DBS dominates everywhere".
  const auto crossover_of = [&](double tau) {
    core::ChannelParams p = base;
    p.gate_time = tau;
    const LossCrossover c = find_crossover_loss(p, dimension);
    if (c.found)
      return c.loss;
    return c.dbs_dominates ? -1.0 : 2.0;
  };

  // Walk a log grid upward until the crossover drops below the target; on
  // this first branch the crossover loss decreases as tau grows.
  constexpr double kTauMin = 1e-9;
  constexpr int kPerDecade = 8;
  double lo = kTauMin;
  double lo_val = crossover_of(lo);
  if (lo_val < target_loss)
    throw Error(ErrorCode::NoSolution, "gate_time",
                "crossover already below target at the smallest gate time");
  double hi = 0.0;
  const double factor = std::pow(10.0, 1.0 / kPerDecade);
  for (double tau = kTauMin * factor; tau <= tau_max * (1.0 + 1e-12); tau *= factor) {
    const double v = crossover_of(tau);
    if (v < target_loss) {
      hi = tau;
      break;
    }
    lo = tau;
    lo_val = v;
  }
  if (hi == 0.0)
    throw Error(ErrorCode::NoSolution, "gate_time",
                "target crossover not reachable for tau in (0, tau_max]");

  for (int i = 0; i < 80 && (hi - lo) > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (crossover_of(mid) >= target_loss)
      lo = mid;
    else
      hi = mid;
  }
  const double tau = 0.5 * (lo + hi);
  const double achieved = crossover_of(tau);
  if (std::fabs(achieved - target_loss) > 5e-3)
    throw Error(ErrorCode::NoSolution, "gate_time",
                "bisection could not place the crossover within 0.005 of target");
  return tau;
}

} // namespace dbsim::analytics
