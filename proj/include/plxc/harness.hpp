#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plxc/error.hpp"
#include "plxc/hurst.hpp"
#include "plxc/types.hpp"

namespace plxc {

struct EstimatorOptions {
  std::optional<LagWindow> window;  // default_ccf_window(N) when empty
  std::uint64_t bandwidth = 0;      // 0 selects floor(sqrt(N))
  std::size_t ccf_points = 40;      // log-spaced lags inside the window
};

/// Result of running one estimator; exactly one of `estimate` / `error` is set.
struct EstimatorOutcome {
  EstimatorMethod method = EstimatorMethod::cross_periodogram;
  std::optional<HurstEstimate> estimate;
  std::optional<ErrorCode> error;
  std::string message;
};

/// Runs each requested estimator on `pair`, recording failures instead of
/// throwing. The lag-domain fit uses the long-memory side of the
/// cross-correlation: positive lags for arfima_arfima, negative lags for
/// arfima_ar (the AR(1) side decays geometrically).
std::vector<EstimatorOutcome> run_estimators(const SeriesPair& pair, PairKind kind,
                                             const std::vector<EstimatorMethod>& methods,
                                             const EstimatorOptions& options);

struct SingleRunConfig {
  PairParams params;
  SimulationConfig simulation;
  EstimatorOptions estimators;
  std::uint64_t max_lag = 0;  // sample CCF range; 0 selects the fit window's upper end
};

struct SingleRunReport {
  double theory = 0.0;
  std::vector<EstimatorOutcome> outcomes;
  std::vector<std::filesystem::path> files;
};

/// Simulates one pair and writes into `out_dir`: series.csv + series.meta,
/// ccf_sample.csv, ccf_exact.csv, ccf_asymptotic.csv (where the asymptote is
/// defined), estimates.csv and report.txt.
SingleRunReport run_single(const SingleRunConfig& config, const std::filesystem::path& out_dir);

std::string format_report(const SingleRunReport& report);

struct SweepConfig {
  PairKind kind = PairKind::arfima_arfima;
  std::vector<double> d1{0.4};
  std::vector<double> d2{0.2};
  std::vector<double> theta{0.5};
  std::vector<double> sigma_ev{0.5};
  double sigma_e2 = 1.0;
  double sigma_v2 = 1.0;
  std::uint64_t length = std::uint64_t{1} << 16;
  std::uint64_t burn_in = 0;
  std::uint64_t replicas = 100;
  std::uint64_t base_seed = 0;
  std::vector<EstimatorMethod> estimators{EstimatorMethod::cross_periodogram};
  EstimatorOptions options;
  std::filesystem::path output;

  void validate() const;
  /// Grid cells in order d1, then d2 (or theta), then sigma_ev.
  std::vector<PairParams> cells() const;
  /// Applies one `key = value` setting (same grammar as the config file).
  void set(std::string_view key, std::string_view value);
};

SweepConfig parse_sweep_config(std::string_view text);

enum class ReplicaStatus { ok, sign_unstable, failed };

struct SweepRow {
  std::uint64_t cell = 0;
  PairParams params;
  EstimatorMethod method = EstimatorMethod::cross_periodogram;
  double theory = 0.0;
  std::vector<double> values;  // NaN where the replica failed
  std::vector<ReplicaStatus> status;
  double mean = 0.0;  // over successful replicas; NaN if none
  double sd = 0.0;    // sample standard deviation over successful replicas

  std::uint64_t count(ReplicaStatus s) const;
};

struct SweepResult {
  std::uint64_t length = 0;
  std::uint64_t replicas = 0;
  std::uint64_t base_seed = 0;
  std::vector<SweepRow> rows;  // ordered by (cell, estimator)
};

/// Mean and sample standard deviation of the successful replicas of a row.
std::pair<double, double> aggregate(const std::vector<double>& values, const std::vector<ReplicaStatus>& status);

/// Runs every (cell, replica) with seed split_seed(base_seed, cell, replica).
/// `jobs` worker threads share the replicas; output does not depend on jobs.
SweepResult run_sweep(const SweepConfig& sweep, unsigned jobs = 1);

std::string format_sweep_result(const SweepResult& result);
SweepResult parse_sweep_result(std::string_view text);

enum class ClaimStatus { pass, fail, info };

struct ClaimLine {
  ClaimStatus status = ClaimStatus::info;
  std::string claim;
  std::string detail;
};

struct ClaimSummary {
  std::vector<ClaimLine> lines;
  bool all_passed() const;
  std::string format() const;
};

/// Tolerances applied to sweep results.
struct ClaimTolerances {
  double mean_vs_theory = 0.05;
  double cross_cell_spread = 0.05;
  double min_success_fraction = 0.8;
  double null_sign_unstable_fraction = 0.9;
  double aggregate_recompute = 1e-12;
};

ClaimSummary verify_claims(const SweepResult& result, const ClaimTolerances& tol = {});

}  // namespace plxc
