// Command-line front end. Talks to the library only through plxc.h.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plxc.h"

namespace {

struct CliError {
  plxc_status status;
};

void check(plxc_status s) {
  if (s != PLXC_OK) throw CliError{s};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using PairPtr = std::unique_ptr<plxc_series_pair, Deleter<plxc_series_pair, plxc_series_pair_free>>;
using CurvePtr = std::unique_ptr<plxc_curve, Deleter<plxc_curve, plxc_curve_free>>;
using SweepConfigPtr = std::unique_ptr<plxc_sweep_config, Deleter<plxc_sweep_config, plxc_sweep_config_free>>;
using SweepResultPtr = std::unique_ptr<plxc_sweep_result, Deleter<plxc_sweep_result, plxc_sweep_result_free>>;

struct ProcessFlags {
  std::string kind = "arfima_arfima";
  double d1 = 0.4;
  double d2 = 0.2;
  double theta = 0.5;
  double sigma_e2 = 1.0;
  double sigma_v2 = 1.0;
  double sigma_ev = 0.5;

  void add_to(CLI::App* app) {
    app->add_option("--kind", kind, "Process pair")
        ->check(CLI::IsMember({"arfima_arfima", "arfima_ar"}))
        ->capture_default_str();
    app->add_option("--d1", d1, "Fractional order of x")->capture_default_str();
    app->add_option("--d2", d2, "Fractional order of y (arfima_arfima)")->capture_default_str();
    app->add_option("--theta", theta, "AR(1) coefficient of y (arfima_ar)")->capture_default_str();
    app->add_option("--sigma-e2", sigma_e2, "Variance of the x innovations")->capture_default_str();
    app->add_option("--sigma-v2", sigma_v2, "Variance of the y innovations")->capture_default_str();
    app->add_option("--sigma-ev", sigma_ev, "Innovation covariance")->capture_default_str();
  }

  plxc_pair_params params() const {
    plxc_pair_params p{};
    p.kind = kind == "arfima_ar" ? PLXC_PAIR_ARFIMA_AR : PLXC_PAIR_ARFIMA_ARFIMA;
    p.d1 = d1;
    p.d2 = d2;
    p.theta = theta;
    p.innovations = {sigma_e2, sigma_v2, sigma_ev};
    return p;
  }
};

struct SimFlags {
  std::uint64_t n = 1u << 14;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "Series length")->capture_default_str();
    app->add_option("--burn-in", burn_in, "Filter length M (0: max(N, 2^14))")->capture_default_str();
    app->add_option("--seed", seed, "RNG seed")->capture_default_str();
  }

  plxc_sim_config config() const { return {n, burn_in, seed}; }
};

struct EstimatorFlags {
  std::vector<std::int64_t> window;
  std::uint64_t m = 0;

  void add_to(CLI::App* app) {
    app->add_option("--window", window, "Lag window lo,hi for ccf_decay")->delimiter(',')->expected(2);
    app->add_option("--m", m, "Cross-periodogram bandwidth (0: floor(sqrt(N)))");
  }

  plxc_estimator_options options() const {
    plxc_estimator_options o{};
    if (window.size() == 2) {
      o.window_lo = window[0];
      o.window_hi = window[1];
    }
    o.bandwidth = m;
    return o;
  }
};

std::string estimator_name(plxc_estimator e) { return e == PLXC_EST_CCF_DECAY ? "ccf_decay" : "cross_periodogram"; }

std::vector<std::int64_t> lag_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> lags;
  for (std::int64_t n = lo; n <= hi; ++n) lags.push_back(n);
  return lags;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long/short-memory cross-correlation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(plxc_version()));

  ProcessFlags proc;
  SimFlags sim;
  EstimatorFlags est;
  std::string in_path;
  std::string out_path;
  std::uint64_t max_lag = 0;

  auto* simulate = app.add_subcommand("simulate", "Simulate one pair into a series CSV plus .meta sidecar");
  proc.add_to(simulate);
  sim.add_to(simulate);
  simulate->add_option("--out", out_path, "Series CSV path")->required();

  auto* run = app.add_subcommand("run", "Single experiment: series, curves, estimates and report in a directory");
  proc.add_to(run);
  sim.add_to(run);
  est.add_to(run);
  run->add_option("--max-lag", max_lag, "Sample CCF range (0: window upper end)");
  run->add_option("--out", out_path, "Output directory")->required();

  std::string curve = "sample";
  auto* xcorr = app.add_subcommand("xcorr", "Cross-correlation curve CSV (lag,value,kind)");
  proc.add_to(xcorr);
  xcorr->add_option("--curve", curve, "sample (from --in), exact or asymptotic (from process flags)")
      ->check(CLI::IsMember({"sample", "exact", "asymptotic"}))
      ->capture_default_str();
  xcorr->add_option("--in", in_path, "Series CSV (sample curve)");
  xcorr->add_option("--max-lag", max_lag, "Largest |lag|")->required();
  xcorr->add_option("--out", out_path, "Curve CSV path")->required();

  std::size_t points = 512;
  auto* spectrum = app.add_subcommand("spectrum", "Analytic cross-spectrum on lambda_j = pi j / points");
  proc.add_to(spectrum);
  spectrum->add_option("--points", points, "Grid size")->capture_default_str();
  spectrum->add_option("--out", out_path, "Spectrum CSV path")->required();

  auto* estimate = app.add_subcommand("estimate", "Estimate H_xy from a series CSV");
  estimate->add_option("--in", in_path, "Series CSV")->required();
  estimate->add_option("--kind", proc.kind, "Pair kind when the series has no .meta sidecar")
      ->check(CLI::IsMember({"arfima_arfima", "arfima_ar"}));
  est.add_to(estimate);
  estimate->add_option("--out", out_path, "Estimates CSV path")->required();

  std::string config_path;
  std::string d1_list, d2_list, theta_list, sigma_ev_list, sigma_e2_s, sigma_v2_s, kind_override, estimators;
  std::optional<std::uint64_t> n_override, replicas, seed_override;
  std::vector<std::int64_t> sweep_window;
  std::optional<std::uint64_t> m_override;
  unsigned jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep from a key = value config");
  sweep->add_option("--config", config_path, "Config file");
  sweep->add_option("--kind", kind_override, "Pair kind");
  sweep->add_option("--d1", d1_list, "Comma-separated d1 grid");
  sweep->add_option("--d2", d2_list, "Comma-separated d2 grid");
  sweep->add_option("--theta", theta_list, "Comma-separated theta grid");
  sweep->add_option("--sigma-ev", sigma_ev_list, "Comma-separated sigma_ev grid");
  sweep->add_option("--sigma-e2", sigma_e2_s, "Variance of the x innovations");
  sweep->add_option("--sigma-v2", sigma_v2_s, "Variance of the y innovations");
  sweep->add_option("--estimators", estimators, "ccf_decay,cross_periodogram");
  sweep->add_option("--n", n_override, "Series length");
  sweep->add_option("--burn-in", sim.burn_in, "Filter length M");
  sweep->add_option("--replicas", replicas, "Replicas per cell");
  sweep->add_option("--seed", seed_override, "Base seed");
  sweep->add_option("--window", sweep_window, "Lag window lo,hi")->delimiter(',')->expected(2);
  sweep->add_option("--m", m_override, "Cross-periodogram bandwidth");
  sweep->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  sweep->add_option("--out", out_path, "SweepResult CSV path (overrides config)");

  auto* verify = app.add_subcommand("verify", "Check a SweepResult CSV against the claims");
  verify->add_option("--in", in_path, "SweepResult CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version print and exit 0; any other usage error exits 2.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) {
      const auto params = proc.params();
      const auto cfg = sim.config();
      plxc_series_pair* raw = nullptr;
      check(plxc_simulate(&params, &cfg, &raw));
      PairPtr pair(raw);
      check(plxc_series_pair_write_csv(pair.get(), out_path.c_str()));
    } else if (run->parsed()) {
      const auto params = proc.params();
      const auto cfg = sim.config();
      const auto opts = est.options();
      plxc_single_report report{};
      check(plxc_run_single(&params, &cfg, &opts, max_lag, out_path.c_str(), &report));
      std::printf("theory H_xy = %.6f\n", report.theory_h_xy);
      if (report.ccf_status == PLXC_OK)
        std::printf("ccf_decay H_xy = %.6f\n", report.ccf_h_xy);
      else
        std::printf("ccf_decay: %s\n", plxc_status_string(report.ccf_status));
      if (report.periodogram_status == PLXC_OK)
        std::printf("cross_periodogram H_xy = %.6f\n", report.periodogram_h_xy);
      else
        std::printf("cross_periodogram: %s\n", plxc_status_string(report.periodogram_status));
    } else if (xcorr->parsed()) {
      plxc_curve* raw = nullptr;
      const auto params = proc.params();
      const auto m = static_cast<std::int64_t>(max_lag);
      if (curve == "sample") {
        if (in_path.empty()) throw CLI::RequiredError("--in");
        plxc_series_pair* pr = nullptr;
        check(plxc_series_pair_read_csv(in_path.c_str(), &pr));
        PairPtr pair(pr);
        check(plxc_sample_cross_correlation(pair.get(), max_lag, &raw));
      } else if (curve == "exact") {
        const auto lags = lag_range(-m, m);
        check(plxc_exact_curve(&params, lags.data(), lags.size(), 0, &raw));
      } else {
        const auto lags = lag_range(1, m);
        check(plxc_asymptotic_curve(&params, lags.data(), lags.size(), &raw));
      }
      CurvePtr c(raw);
      check(plxc_curve_write_csv(c.get(), out_path.c_str()));
    } else if (spectrum->parsed()) {
      const auto params = proc.params();
      check(plxc_spectrum_write_csv(&params, points, out_path.c_str()));
    } else if (estimate->parsed()) {
      plxc_series_pair* pr = nullptr;
      check(plxc_series_pair_read_csv(in_path.c_str(), &pr));
      PairPtr pair(pr);
      plxc_pair_params meta{};
      plxc_pair_kind kind = proc.kind == "arfima_ar" ? PLXC_PAIR_ARFIMA_AR : PLXC_PAIR_ARFIMA_ARFIMA;
      if (plxc_series_pair_params(pair.get(), &meta) && estimate->count("--kind") == 0) kind = meta.kind;
      const auto opts = est.options();
      plxc_hurst_estimate out[2];
      plxc_status status[2];
      check(plxc_estimate_all(pair.get(), kind, &opts, out, status));
      std::vector<plxc_hurst_estimate> ok;
      for (int i = 0; i < 2; ++i) {
        if (status[i] == PLXC_OK)
          ok.push_back(out[i]);
        else
          std::fprintf(stderr, "%s: %s\n", estimator_name(out[i].method).c_str(), plxc_status_string(status[i]));
      }
      check(plxc_estimates_write_csv(ok.data(), ok.size(), out_path.c_str()));
    } else if (sweep->parsed()) {
      plxc_sweep_config* rc = nullptr;
      check(config_path.empty() ? plxc_sweep_config_create(&rc) : plxc_sweep_config_load(config_path.c_str(), &rc));
      SweepConfigPtr cfg(rc);
      auto set = [&](const char* key, const std::string& value) {
        check(plxc_sweep_config_set(cfg.get(), key, value.c_str()));
      };
      if (!kind_override.empty()) set("kind", kind_override);
      if (!d1_list.empty()) set("d1", d1_list);
      if (!d2_list.empty()) set("d2", d2_list);
      if (!theta_list.empty()) set("theta", theta_list);
      if (!sigma_ev_list.empty()) set("sigma_ev", sigma_ev_list);
      if (!sigma_e2_s.empty()) set("sigma_e2", sigma_e2_s);
      if (!sigma_v2_s.empty()) set("sigma_v2", sigma_v2_s);
      if (!estimators.empty()) set("estimators", estimators);
      if (n_override) set("n", std::to_string(*n_override));
      if (sweep->count("--burn-in")) set("burn_in", std::to_string(sim.burn_in));
      if (replicas) set("replicas", std::to_string(*replicas));
      if (seed_override) set("seed", std::to_string(*seed_override));
      if (sweep_window.size() == 2) set("window", std::to_string(sweep_window[0]) + "," + std::to_string(sweep_window[1]));
      if (m_override) set("m", std::to_string(*m_override));
      if (!out_path.empty()) set("out", out_path);
      const char* dest = plxc_sweep_config_output(cfg.get());
      if (dest == nullptr) throw CLI::RequiredError("--out (or `out` in the config)");
      const std::string dest_path = dest;
      plxc_sweep_result* rr = nullptr;
      check(plxc_run_sweep(cfg.get(), jobs, &rr));
      SweepResultPtr result(rr);
      check(plxc_sweep_result_write_csv(result.get(), dest_path.c_str()));
    } else if (verify->parsed()) {
      plxc_sweep_result* rr = nullptr;
      check(plxc_sweep_result_read_csv(in_path.c_str(), &rr));
      SweepResultPtr result(rr);
      char* summary = nullptr;
      int passed = 0;
      check(plxc_verify_claims(result.get(), &summary, &passed));
      std::fputs(summary, stdout);
      plxc_string_free(summary);
      return passed ? 0 : 1;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << plxc_status_string(e.status) << ": " << plxc_last_error() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  return 0;
}
