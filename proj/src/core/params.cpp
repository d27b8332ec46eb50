#include "core/params.hpp"

#include <cmath>
#include <sstream>

namespace dbsim::core {

namespace {

bool finite(double v) { return std::isfinite(v); }

[[noreturn]] void reject(const char *field, const std::string &detail) {
  std::ostringstream os;
  os << "parameter '" << field << "' out of range: " << detail;
  throw_out_of_range(field, os.str());
}

} // namespace

ChannelParams validate_params(const ChannelParams &candidate) {
  const ChannelParams &p = candidate;
  if (p.dimension < 2)
    reject("dimension", "alphabet needs at least 2 letters");
  if (!finite(p.efficiency) || p.efficiency < 0.0 || p.efficiency > 1.0)
    reject("efficiency", "must lie in [0,1]");
  if (!finite(p.dark_rate) || p.dark_rate < 0.0)
    reject("dark_rate", "must be >= 0 counts per second");
  if (!finite(p.gate_time) || p.gate_time <= 0.0)
    reject("gate_time", "must be > 0 seconds");
  if (!finite(p.mean_photon_number) || p.mean_photon_number < 0.0)
    reject("mean_photon_number", "must be >= 0");
  if (p.basis_count < 2)
    reject("basis_count", "needs at least 2 mutually unbiased bases");
  // Keep 1 − P_γ = e^{−γτ(D−1)} strictly inside (0,1]: beyond this exposure
  // the survival factor underflows to exactly zero in double precision.
  if (!finite(p.dark_exposure()) || p.dark_exposure() > 700.0)
    reject("dark_rate", "dark exposure gamma*tau*(D-1) too large; no gate survives");
  return p;
}

} // namespace dbsim::core
