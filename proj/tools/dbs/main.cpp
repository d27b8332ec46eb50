// dbs — batch front-end for the dbsim shared library: closed-form parameter
// sweeps, Monte Carlo sessions, speckle detection maps, pairing
// combinatorics and gate-time calibration. Emits CSV tables plus a JSON run
// manifest per output file; identical seeds reproduce identical data bytes.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dbsim/dbsim.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_api(dbsim_status status, const char *what) {
  if (status != DBSIM_OK) {
    std::ostringstream os;
    os << what << ": " << dbsim_last_error();
    throw ApiError(os.str());
  }
}

// Range violations on user-supplied sizes are usage errors, not internal ones.
void check_usage(dbsim_status status, const char *what) {
  if (status == DBSIM_ERR_OUT_OF_RANGE)
    throw UsageError(std::string(what) + ": " + dbsim_last_error());
  check_api(status, what);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v); // prints "inf"/"nan" sentinels
  return buf;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// ------------------------------------------------------------------
// Shared parameter plumbing

struct ParamFlags {
  int dimension = 16;
  double efficiency = 0.52;
  double dark_rate = 300.0;
  double gate_time = 5e-7;
  double mean_photon_number = 0.2;
  int basis_count = 2;

  void attach(CLI::App *cmd) {
    cmd->add_option("--dimension", dimension, "Alphabet size / detector count D");
    cmd->add_option("--efficiency", efficiency, "Channel+detector efficiency eta");
    cmd->add_option("--dark-rate", dark_rate, "Dark counts per second gamma");
    cmd->add_option("--gate-time", gate_time, "Detector gate time tau [s]");
    cmd->add_option("--mean-photon-number", mean_photon_number,
                    "Poisson mean photons per pulse lambda");
    cmd->add_option("--basis-count", basis_count, "Number of mutually unbiased bases");
  }

  json to_json() const {
    return json{{"dimension", dimension},
                {"efficiency", efficiency},
                {"dark_rate", dark_rate},
                {"gate_time", gate_time},
                {"mean_photon_number", mean_photon_number},
                {"basis_count", basis_count}};
  }
};

struct ParamsHandle {
  dbsim_params *p = nullptr;
  explicit ParamsHandle(const ParamFlags &f) {
    const dbsim_status status =
        dbsim_params_create(&p, f.dimension, f.efficiency, f.dark_rate, f.gate_time,
                            f.mean_photon_number, f.basis_count);
    if (status != DBSIM_OK)
      throw UsageError(std::string("invalid parameters: ") + dbsim_last_error());
  }
  ~ParamsHandle() { dbsim_params_destroy(p); }
  ParamsHandle(const ParamsHandle &) = delete;
  ParamsHandle &operator=(const ParamsHandle &) = delete;
};

// ------------------------------------------------------------------
// Sweep handling

struct SweepFlags {
  std::string axis = "dimension";
  std::string values_csv;
  double from = 0.0, to = 0.0, step = 0.0;
  bool has_range = false;

  void attach(CLI::App *cmd) {
    cmd->add_option("--axis", axis,
                    "Swept parameter: dimension|efficiency|dark-rate|gate-time|"
                    "mean-photon-number")
        ->capture_default_str();
    cmd->add_option("--values", values_csv, "Comma-separated sweep values");
    auto *f = cmd->add_option("--from", from, "Range sweep start (inclusive)");
    auto *t = cmd->add_option("--to", to, "Range sweep end (inclusive)");
    auto *s = cmd->add_option("--step", step, "Range sweep step");
    f->needs(t);
    t->needs(f);
    s->needs(f);
  }

  // nullopt: no sweep requested, emit one row at the fixed parameters.
  // An explicitly empty --values list yields an empty table (header only).
  std::optional<std::vector<double>> resolve(const CLI::App *cmd) {
    std::vector<double> values;
    if (cmd->count("--values") > 0) {
      std::stringstream ss(values_csv);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty())
          continue;
        try {
          values.push_back(std::stod(item));
        } catch (const std::exception &) {
          throw UsageError("unparseable sweep value '" + item + "'");
        }
      }
      return values;
    }
    if (cmd->count("--from") > 0) {
      const double d = cmd->count("--step") > 0 ? step : 1.0;
      if (d <= 0.0)
        throw UsageError("sweep step must be positive");
      for (double v = from; v <= to + 0.5 * d * 1e-9 + (to - from) * 1e-12; v += d) {
        values.push_back(v);
        if (values.size() > 1000000)
          throw UsageError("sweep has more than 1e6 points");
      }
      return values;
    }
    return std::nullopt;
  }
};

ParamFlags apply_axis(const ParamFlags &base, const std::string &axis, double value) {
  ParamFlags p = base;
  if (axis == "dimension") {
    p.dimension = static_cast<int>(std::llround(value));
    if (std::fabs(value - p.dimension) > 1e-9)
      throw UsageError("dimension sweep values must be integers");
  } else if (axis == "efficiency") {
    p.efficiency = value;
  } else if (axis == "dark-rate" || axis == "dark_rate") {
    p.dark_rate = value;
  } else if (axis == "gate-time" || axis == "gate_time") {
    p.gate_time = value;
  } else if (axis == "mean-photon-number" || axis == "mean_photon_number") {
    p.mean_photon_number = value;
  } else {
    throw UsageError("unknown sweep axis '" + axis + "'");
  }
  return p;
}

// ------------------------------------------------------------------
// Output plumbing

struct OutputFlags {
  std::string out;
  std::optional<double> tau_calibration;

  void attach(CLI::App *cmd) {
    cmd->add_option("--out", out, "Output CSV file (stdout when omitted)");
    cmd->add_option("--tau-calibration", tau_calibration,
                    "Calibrated gate time to record in the run manifest");
  }
};

void write_manifest(const std::string &out_path, const std::string &command,
                    const ParamFlags &params, const json &extra,
                    const std::vector<std::string> &outputs) {
  json manifest{{"tool", "dbs"},
                {"version", dbsim_version()},
                {"command", command},
                {"created_utc", utc_now()},
                {"params", params.to_json()},
                {"outputs", outputs},
                {"format", "csv-v1"}};
  manifest.update(extra);
  std::ofstream os(out_path + ".manifest.json");
  if (!os)
    throw ApiError("cannot write manifest next to " + out_path);
  os << manifest.dump(2) << "\n";
}

struct TableSink {
  std::ofstream file;
  std::ostream *os = &std::cout;
  explicit TableSink(const std::string &path) {
    if (!path.empty()) {
      file.open(path);
      if (!file)
        throw ApiError("cannot open output file " + path);
      os = &file;
    }
  }
  void row(const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      *os << cells[i] << (i + 1 == cells.size() ? "\n" : ",");
  }
};

std::vector<std::string> param_cells(const ParamFlags &p) {
  return {std::to_string(p.dimension), fmt_double(p.efficiency),
          fmt_double(p.dark_rate), fmt_double(p.gate_time),
          fmt_double(p.mean_photon_number)};
}

const std::vector<std::string> kParamHeader = {
    "dimension", "efficiency", "dark_rate", "gate_time", "mean_photon_number"};

// Degenerate denominators surface as inf/nan sentinels so sweep tables stay
// rectangular; any other failure aborts the run.
bool budget_or_sentinel(dbsim_status status, dbsim_error_budget &b, const char *what) {
  if (status == DBSIM_OK)
    return true;
  if (status == DBSIM_ERR_DEGENERATE) {
    b.p_corr = std::nan("");
    b.p_be = std::nan("");
    b.p_ee = std::nan("");
    b.ratio = std::numeric_limits<double>::infinity();
    return false;
  }
  check_api(status, what);
  return false;
}

bool eve_or_sentinel(dbsim_status status, dbsim_eve_budget &e, const char *what) {
  if (status == DBSIM_OK)
    return true;
  if (status == DBSIM_ERR_DEGENERATE) {
    e.p_b = std::nan("");
    e.p_o = std::nan("");
    e.p_mult = std::nan("");
    e.p_phot = std::nan("");
    e.ratio = std::numeric_limits<double>::infinity();
    return false;
  }
  check_api(status, what);
  return false;
}

// ------------------------------------------------------------------
// Subcommands

int cmd_analytic(const ParamFlags &base, SweepFlags &sweep, const OutputFlags &output,
                 const CLI::App *cmd) {
  const auto resolved = sweep.resolve(cmd);
  const bool single_point = !resolved.has_value();
  std::vector<double> values = resolved.value_or(std::vector<double>{});

  TableSink sink(output.out);
  std::vector<std::string> header = kParamHeader;
  for (const char *c :
       {"p_gamma", "dbs_p_corr", "dbs_p_be", "dbs_p_ee", "dbs_ratio", "ipbe_p_corr",
        "ipbe_p_ee", "ipbe_ratio", "p_mult", "p_phot", "dbs_p_b", "dbs_p_o",
        "dbs_pb_over_po", "ipbe_p_b", "ipbe_p_o", "ipbe_pb_over_po"})
    header.push_back(c);
  sink.row(header);

  if (single_point)
    values.push_back(0.0); // one row at the fixed parameters
  for (double v : values) {
    const ParamFlags point =
        single_point ? base : apply_axis(base, sweep.axis, v);
    ParamsHandle h(point);

    double pg = 0.0;
    check_api(dbsim_p_gamma(h.p, &pg), "p_gamma");
    dbsim_error_budget dbs{}, ipbe{};
    budget_or_sentinel(dbsim_dbs_budget(h.p, &dbs), dbs, "dbs budget");
    budget_or_sentinel(dbsim_ipbe_budget(h.p, &ipbe), ipbe, "ipbe budget");
    dbsim_eve_budget eve_dbs{}, eve_ipbe{};
    eve_or_sentinel(dbsim_eve_budget_get(h.p, DBSIM_MODE_DBS, &eve_dbs), eve_dbs,
                    "eve budget");
    eve_or_sentinel(dbsim_eve_budget_get(h.p, DBSIM_MODE_IPBE, &eve_ipbe), eve_ipbe,
                    "eve budget");

    std::vector<std::string> cells = param_cells(point);
    for (double x : {pg, dbs.p_corr, dbs.p_be, dbs.p_ee, dbs.ratio, ipbe.p_corr,
                     ipbe.p_ee, ipbe.ratio, eve_dbs.p_mult, eve_dbs.p_phot,
                     eve_dbs.p_b, eve_dbs.p_o, eve_dbs.ratio, eve_ipbe.p_b,
                     eve_ipbe.p_o, eve_ipbe.ratio})
      cells.push_back(fmt_double(x));
    sink.row(cells);
  }

  if (!output.out.empty()) {
    json extra{{"axis", sweep.axis},
               {"points", single_point ? 1 : static_cast<int>(values.size())}};
    if (output.tau_calibration)
      extra["tau_calibration"] = *output.tau_calibration;
    write_manifest(output.out, "analytic", base, extra, {output.out});
  }
  return kExitOk;
}

int cmd_simulate(const ParamFlags &base, SweepFlags &sweep, const OutputFlags &output,
                 const std::string &protocol, std::uint64_t trials, std::uint64_t seed,
                 unsigned threads, bool force_single, const std::string &delocalization,
                 int speckle_segments, std::uint64_t speckle_seed, const CLI::App *cmd) {
  if (trials < 1)
    throw UsageError("--trials must be at least 1");
  if (protocol != "dbs" && protocol != "ipbe" && protocol != "oscar")
    throw UsageError("--protocol must be dbs, ipbe or oscar");
  if (delocalization != "uniform" && delocalization != "speckle")
    throw UsageError("--delocalization must be uniform or speckle");

  const auto resolved = sweep.resolve(cmd);
  const bool single_point = !resolved.has_value();
  std::vector<double> values = resolved.value_or(std::vector<double>{});
  if (single_point)
    values.push_back(0.0);

  TableSink sink(output.out);
  std::vector<std::string> header = kParamHeader;
  header.push_back("trials");
  header.push_back("seed");
  if (protocol == "oscar") {
    for (const char *c : {"both_loaded", "intercepted_multi", "extracted_pairs",
                          "bob_success", "p_b_hat", "p_o_hat", "ana_p_b", "ana_p_o",
                          "ana_pb_over_po"})
      header.push_back(c);
  } else {
    for (const char *c :
         {"correct", "basis_error", "empty_error", "lost", "discarded_mixed",
          "discarded_mismatch", "p_corr_hat", "p_corr_err", "p_be_hat", "p_be_err",
          "p_ee_hat", "p_ee_err", "ratio_hat", "ana_p_corr", "ana_p_be", "ana_p_ee",
          "ana_ratio"})
      header.push_back(c);
  }
  sink.row(header);

  for (double v : values) {
    const ParamFlags point = single_point ? base : apply_axis(base, sweep.axis, v);
    ParamsHandle h(point);

    dbsim_run_options opt{};
    opt.seed = seed;
    opt.force_single_photon = force_single ? 1 : 0;
    opt.threads = threads;

    std::vector<double> deloc;
    dbsim_fiber *fiber = nullptr;
    dbsim_mask *mask = nullptr;
    if (delocalization == "speckle" && protocol != "oscar") {
      check_api(dbsim_fiber_create(&fiber, speckle_segments, point.dimension,
                                   speckle_seed),
                "speckle fiber");
      double enhancement = 0.0;
      check_api(dbsim_optimize_focus(fiber, point.dimension / 2,
                                     DBSIM_BASIS_COMPUTATIONAL, 3, 16, &mask,
                                     &enhancement),
                "speckle optimization");
      deloc.resize(static_cast<std::size_t>(point.dimension));
      check_api(dbsim_delocalized_distribution(fiber, mask, deloc.data()),
                "delocalized distribution");
      opt.delocalized = deloc.data();
      opt.delocalized_len = deloc.size();
    }

    std::vector<std::string> cells = param_cells(point);
    cells.push_back(std::to_string(trials));
    cells.push_back(std::to_string(seed));

    if (protocol == "oscar") {
      dbsim_oscar_tally t{};
      check_api(dbsim_run_oscar_pns(h.p, trials, &opt, &t), "oscar session");
      dbsim_eve_budget e{};
      eve_or_sentinel(dbsim_eve_budget_get(h.p, DBSIM_MODE_DBS, &e), e, "eve budget");
      for (std::uint64_t c : {t.both_loaded, t.intercepted_multi, t.extracted_pairs,
                              t.bob_success})
        cells.push_back(std::to_string(c));
      for (double x : {t.p_b_hat, t.p_o_hat, e.p_b, e.p_o, e.ratio})
        cells.push_back(fmt_double(x));
    } else {
      dbsim_session_tally t{};
      if (protocol == "dbs")
        check_api(dbsim_run_dbs_session(h.p, trials, &opt, &t), "dbs session");
      else
        check_api(dbsim_run_ipbe_session(h.p, trials, &opt, &t), "ipbe session");
      dbsim_error_budget b{};
      if (protocol == "dbs")
        budget_or_sentinel(dbsim_dbs_budget(h.p, &b), b, "dbs budget");
      else
        budget_or_sentinel(dbsim_ipbe_budget(h.p, &b), b, "ipbe budget");
      for (std::uint64_t c : {t.correct, t.basis_error, t.empty_error, t.lost,
                              t.discarded_mixed, t.discarded_mismatch})
        cells.push_back(std::to_string(c));
      for (double x : {t.p_corr_hat, t.p_corr_err, t.p_be_hat, t.p_be_err, t.p_ee_hat,
                       t.p_ee_err, t.ratio_hat, b.p_corr, b.p_be, b.p_ee, b.ratio})
        cells.push_back(fmt_double(x));
    }
    sink.row(cells);

    if (mask != nullptr)
      dbsim_mask_destroy(mask);
    if (fiber != nullptr)
      dbsim_fiber_destroy(fiber);
  }

  if (!output.out.empty()) {
    json extra{{"axis", sweep.axis},
               {"protocol", protocol},
               {"seed", seed},
               {"trials", trials},
               {"force_single_photon", force_single},
               {"delocalization", delocalization}};
    if (output.tau_calibration)
      extra["tau_calibration"] = *output.tau_calibration;
    write_manifest(output.out, "simulate", base, extra, {output.out});
  }
  return kExitOk;
}

int cmd_speckle(int segments, int modes, std::uint64_t seed, std::uint64_t pairs,
                int target, int sweeps, int phases, const std::string &prefix,
                const std::string &fiber_in, const std::string &fiber_out) {
  if (prefix.empty())
    throw UsageError("--out prefix is required");

  dbsim_fiber *fiber = nullptr;
  if (!fiber_in.empty()) {
    const dbsim_status status = dbsim_fiber_load(&fiber, fiber_in.c_str());
    if (status == DBSIM_ERR_IO)
      throw UsageError(std::string("cannot load fiber: ") + dbsim_last_error());
    check_api(status, "fiber load");
    segments = dbsim_fiber_segments(fiber);
    modes = dbsim_fiber_modes(fiber);
  } else {
    check_usage(dbsim_fiber_create(&fiber, segments, modes, seed), "fiber");
  }
  if (!fiber_out.empty())
    check_api(dbsim_fiber_save(fiber, fiber_out.c_str()), "fiber save");

  // Square grid when the mode count is a perfect square, one row otherwise.
  int rows = 1, cols = modes;
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(modes))));
  if (r * r == modes) {
    rows = r;
    cols = r;
  }

  const int target_mode = target >= 0 ? target : modes / 2;
  std::vector<std::string> outputs;
  double enhancement = 0.0;

  dbsim_mask *mask = nullptr;
  check_usage(dbsim_optimize_focus(fiber, target_mode, DBSIM_BASIS_COMPUTATIONAL,
                                   sweeps, phases, &mask, &enhancement),
              "optimization");

  std::vector<double> matched(static_cast<std::size_t>(modes));
  std::vector<double> mismatched(static_cast<std::size_t>(modes));
  check_api(dbsim_measure_intensity(fiber, mask, DBSIM_BASIS_COMPUTATIONAL,
                                    matched.data()),
            "matched intensity");
  check_api(dbsim_delocalized_distribution(fiber, mask, mismatched.data()),
            "mismatched intensity");

  const auto emit = [&](const std::string &name, const std::vector<double> &dist,
                        std::uint64_t sample_seed) {
    std::vector<double> pd(dist.size()), pd2(dist.size());
    check_usage(dbsim_sample_pd_pd2(dist.data(), dist.size(), pairs, sample_seed,
                                    pd.data(), pd2.data()),
                "pair sampling");
    const std::string pd_path = prefix + "_pd_" + name + ".csv";
    const std::string pd2_path = prefix + "_pd2_" + name + ".csv";
    check_api(dbsim_grid_csv_write(pd_path.c_str(), pd.data(), rows, cols), "grid");
    check_api(dbsim_grid_csv_write(pd2_path.c_str(), pd2.data(), rows, cols), "grid");
    outputs.push_back(pd_path);
    outputs.push_back(pd2_path);
  };
  emit("matched", matched, seed + 1);
  emit("mismatched", mismatched, seed + 2);

  dbsim_mask_destroy(mask);
  dbsim_fiber_destroy(fiber);

  std::cout << "enhancement " << fmt_double(enhancement) << "\n";

  json extra{{"segments", segments}, {"modes", modes},
             {"seed", seed},         {"pairs", pairs},
             {"target", target_mode}, {"sweeps", sweeps},
             {"phases", phases},     {"enhancement", enhancement},
             {"grid_rows", rows},    {"grid_cols", cols}};
  if (!fiber_in.empty())
    extra["fiber_in"] = fiber_in;
  if (!fiber_out.empty()) {
    extra["fiber_out"] = fiber_out;
    outputs.push_back(fiber_out);
  }
  ParamFlags unused{};
  write_manifest(prefix, "speckle", unused, extra, outputs);
  return kExitOk;
}

// Two-digit scientific notation from (mantissa, exponent) parts; the parts
// representation survives magnitudes far below double underflow.
std::string sci2(double mantissa, int exponent) {
  if (mantissa >= 9.995) { // would round to "10.00"
    mantissa /= 10.0;
    exponent += 1;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fe%d", mantissa, exponent);
  return buf;
}

int cmd_combinatorics(int n) {
  char *decimal = nullptr;
  const dbsim_status status = dbsim_pairing_combinations(n, &decimal);
  if (status == DBSIM_ERR_ODD_LENGTH || status == DBSIM_ERR_OUT_OF_RANGE)
    throw UsageError(std::string("invalid --n: ") + dbsim_last_error());
  check_api(status, "pairing combinations");

  double mantissa = 0.0;
  int exponent = 0;
  check_api(dbsim_pairing_inverse_sci(n, &mantissa, &exponent), "inverse");

  // 2^-n in parts, from logs: exact enough for two digits at any n.
  const double l = -static_cast<double>(n) * std::log10(2.0);
  const int guess_exp = static_cast<int>(std::floor(l));
  const double guess_mant = std::pow(10.0, l - guess_exp);

  std::printf("pairings C = %s\n", decimal);
  std::printf("pairing guess probability 1/C = %s\n", sci2(mantissa, exponent).c_str());
  std::printf("basis guess probability 2^-%d = %s\n", n,
              sci2(guess_mant, guess_exp).c_str());
  dbsim_string_free(decimal);
  return kExitOk;
}

int cmd_calibrate_tau(int dimension, double dark_rate, double lambda,
                      double target_loss, double tau_max, const std::string &out) {
  double tau = 0.0;
  const dbsim_status status =
      dbsim_calibrate_tau(dark_rate, lambda, dimension, target_loss, tau_max, &tau);
  if (status == DBSIM_ERR_NO_SOLUTION)
    throw UsageError(std::string("calibration target unreachable: ") +
                     dbsim_last_error());
  check_api(status, "calibrate tau");
  std::printf("tau %.17g\n", tau);

  if (!out.empty()) {
    TableSink sink(out);
    sink.row({"dimension", "dark_rate", "mean_photon_number", "target_loss", "tau"});
    sink.row({std::to_string(dimension), fmt_double(dark_rate), fmt_double(lambda),
              fmt_double(target_loss), fmt_double(tau)});
    ParamFlags p{};
    p.dimension = dimension;
    p.dark_rate = dark_rate;
    p.mean_photon_number = lambda;
    p.gate_time = tau;
    write_manifest(out, "calibrate-tau",
                   p, json{{"target_loss", target_loss}, {"tau_calibration", tau}},
                   {out});
  }
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"dbs — two-photon data-basis-shuffling channel analytics and simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dbsim_version());

  // analytic
  auto *analytic = app.add_subcommand("analytic", "Closed-form budgets over a sweep");
  ParamFlags ana_params;
  SweepFlags ana_sweep;
  OutputFlags ana_out;
  ana_params.attach(analytic);
  ana_sweep.attach(analytic);
  ana_out.attach(analytic);

  // simulate
  auto *simulate = app.add_subcommand("simulate", "Monte Carlo sessions over a sweep");
  ParamFlags sim_params;
  SweepFlags sim_sweep;
  OutputFlags sim_out;
  std::string protocol = "dbs";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool force_single = false;
  std::string delocalization = "uniform";
  int speckle_segments = 256;
  std::uint64_t speckle_seed = 1;
  sim_params.attach(simulate);
  sim_sweep.attach(simulate);
  sim_out.attach(simulate);
  simulate->add_option("--protocol", protocol, "dbs | ipbe | oscar")
      ->capture_default_str();
  simulate->add_option("--trials", trials, "Twins (dbs/oscar) or slots (ipbe) per point")
      ->capture_default_str();
  simulate->add_option("--seed", seed, "Random seed")->capture_default_str();
  simulate->add_option("--threads", threads, "Worker threads (0 = auto)");
  simulate->add_flag("--force-single", force_single,
                     "Force exactly one photon per pulse (ideal-source runs)");
  simulate->add_option("--delocalization", delocalization,
                       "Wrong-basis detection model: uniform | speckle")
      ->capture_default_str();
  simulate->add_option("--speckle-segments", speckle_segments,
                       "SLM segments for the speckle delocalization model");
  simulate->add_option("--speckle-seed", speckle_seed,
                       "Fiber seed for the speckle delocalization model");

  // speckle
  auto *speckle = app.add_subcommand("speckle", "Detection-map grids for one fiber");
  int segments = 256, modes = 289, target = -1, sweeps = 3, phases = 16;
  std::uint64_t sp_seed = 1, pairs = 1000000;
  std::string sp_prefix;
  speckle->add_option("--segments", segments, "SLM segment count")
      ->capture_default_str();
  speckle->add_option("--modes", modes, "Output modes / detector pixels")
      ->capture_default_str();
  speckle->add_option("--seed", sp_seed, "Fiber seed")->capture_default_str();
  speckle->add_option("--pairs", pairs, "Photon pairs to sample per map")
      ->capture_default_str();
  speckle->add_option("--target", target, "Focus target mode (default: center)");
  speckle->add_option("--sweeps", sweeps, "Optimization sweeps");
  speckle->add_option("--phases", phases, "Test phases per segment");
  speckle->add_option("--out", sp_prefix, "Output file prefix")->required();
  std::string sp_fiber_in, sp_fiber_out;
  speckle->add_option("--fiber", sp_fiber_in,
                      "Load the transfer matrix from a fiber file instead of "
                      "generating one (overrides --segments/--modes/--seed)");
  speckle->add_option("--save-fiber", sp_fiber_out,
                      "Write the transfer matrix to a fiber file");

  // combinatorics
  auto *comb = app.add_subcommand("combinatorics", "Pairing and basis guess counts");
  int comb_n = 100;
  comb->add_option("--n", comb_n, "Stream length (even)")->required();

  // calibrate-tau
  auto *cal = app.add_subcommand("calibrate-tau",
                                 "Solve the gate time that places the loss crossover");
  int cal_dim = 16;
  double cal_gamma = 500.0, cal_lambda = 0.2, cal_target = 0.45, cal_tau_max = 1e-3;
  std::string cal_out;
  cal->add_option("--dimension", cal_dim)->capture_default_str();
  cal->add_option("--dark-rate", cal_gamma)->capture_default_str();
  cal->add_option("--mean-photon-number", cal_lambda)->capture_default_str();
  cal->add_option("--target-loss", cal_target)->capture_default_str();
  cal->add_option("--tau-max", cal_tau_max)->capture_default_str();
  cal->add_option("--out", cal_out, "Optional CSV output (with manifest)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (analytic->parsed())
      return cmd_analytic(ana_params, ana_sweep, ana_out, analytic);
    if (simulate->parsed())
      return cmd_simulate(sim_params, sim_sweep, sim_out, protocol, trials, seed,
                          threads, force_single, delocalization, speckle_segments,
                          speckle_seed, simulate);
    if (speckle->parsed())
      return cmd_speckle(segments, modes, sp_seed, pairs, target, sweeps, phases,
                         sp_prefix, sp_fiber_in, sp_fiber_out);
    if (comb->parsed())
      return cmd_combinatorics(comb_n);
    if (cal->parsed())
      return cmd_calibrate_tau(cal_dim, cal_gamma, cal_lambda, cal_target, cal_tau_max,
                               cal_out);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
