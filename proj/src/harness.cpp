#include "plxc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "plxc/arfima.hpp"
#include "plxc/correlation.hpp"
#include "plxc/io.hpp"
#include "plxc/rng.hpp"

namespace plxc {

namespace {

constexpr std::size_t kCurvePointsPerSide = 25;

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
      return "invalid_argument";
    case ErrorCode::domain:
      return "domain";
    case ErrorCode::degenerate_input:
      return "degenerate_input";
    case ErrorCode::sign_instability:
      return "sign_instability";
    case ErrorCode::insufficient_points:
      return "insufficient_points";
    case ErrorCode::io:
      return "io";
    case ErrorCode::integrity:
      return "integrity";
    case ErrorCode::parse:
      return "parse";
  }
  return "unknown";
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  for (const auto item : io::split_csv_line(text)) out.push_back(io::parse_double(item));
  require(!out.empty(), ErrorCode::parse, "empty list");
  return out;
}

std::string format_fixed(double v, int precision = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

std::string describe_cell(const SweepRow& row) {
  std::ostringstream os;
  os << "cell " << row.cell << ' ' << to_string(row.method) << " [" << to_string(row.params.kind)
     << " d1=" << io::format_double(row.params.d1);
  if (row.params.kind == PairKind::arfima_arfima) {
    os << " d2=" << io::format_double(row.params.d2);
  } else {
    os << " theta=" << io::format_double(row.params.theta);
  }
  os << " sigma_ev=" << io::format_double(row.params.innovations.sigma_ev) << ']';
  return os.str();
}

std::string_view status_token(ReplicaStatus s) {
  switch (s) {
    case ReplicaStatus::ok:
      return "ok";
    case ReplicaStatus::sign_unstable:
      return "sign_unstable";
    case ReplicaStatus::failed:
      return "failed";
  }
  return "failed";
}

}  // namespace

std::vector<EstimatorOutcome> run_estimators(const SeriesPair& pair, PairKind kind,
                                             const std::vector<EstimatorMethod>& methods,
                                             const EstimatorOptions& options) {
  std::vector<EstimatorOutcome> outcomes;
  for (const auto method : methods) {
    EstimatorOutcome outcome;
    outcome.method = method;
    try {
      if (method == EstimatorMethod::cross_periodogram) {
        outcome.estimate = estimate_hxy_cross_periodogram(pair, options.bandwidth);
      } else {
        const LagWindow window = options.window.value_or(default_ccf_window(pair.size()));
        require(window.lo >= 1 && window.lo < window.hi, ErrorCode::invalid_argument,
                "lag window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                    "] is empty for this series length");
        const auto lags = log_spaced_lags(window.lo, window.hi, options.ccf_points);
        // rho_yx(n) = rho_xy(-n): the AR(1) pair carries its power law at negative lags.
        const auto curve = kind == PairKind::arfima_ar ? sample_cross_correlation_at(pair.swapped(), lags)
                                                       : sample_cross_correlation_at(pair, lags);
        outcome.estimate = estimate_hxy_ccf_decay(curve, window);
      }
    } catch (const Error& e) {
      outcome.estimate.reset();
      outcome.error = e.code();
      outcome.message = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

SingleRunReport run_single(const SingleRunConfig& config, const std::filesystem::path& out_dir) {
  config.params.validate();
  config.simulation.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  require(!ec, ErrorCode::io, "cannot create output directory '" + out_dir.string() + "': " + ec.message());

  SingleRunReport report;
  report.theory = theoretical_hxy(config.params);
  const auto pair = simulate(config.params, config.simulation);
  const auto n = pair.size();

  const auto series_path = out_dir / "series.csv";
  io::write_series(pair, series_path);
  report.files.push_back(series_path);
  report.files.push_back(io::meta_path_for(series_path));

  const LagWindow window = config.estimators.window.value_or(default_ccf_window(n));
  std::uint64_t max_lag = config.max_lag != 0 ? config.max_lag : static_cast<std::uint64_t>(std::max<std::int64_t>(window.hi, 1));
  max_lag = std::min<std::uint64_t>(max_lag, n > 4 ? (n - 1) / 4 : 0);
  if (max_lag >= 1) {
    const auto path = out_dir / "ccf_sample.csv";
    io::write_curve(sample_cross_correlation(pair, max_lag), path);
    report.files.push_back(path);

    const auto positive = log_spaced_lags(1, static_cast<std::int64_t>(std::max<std::uint64_t>(max_lag, 2)),
                                          kCurvePointsPerSide);
    std::vector<std::int64_t> both;
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) both.push_back(-*it);
    both.push_back(0);
    both.insert(both.end(), positive.begin(), positive.end());
    const auto exact_path = out_dir / "ccf_exact.csv";
    io::write_curve(exact_curve(config.params, both), exact_path);
    report.files.push_back(exact_path);

    const bool asymptote_defined = config.params.kind == PairKind::arfima_arfima
                                       ? config.params.d1 > 0.0 && config.params.d2 > 0.0
                                       : config.params.d1 > 0.0 && config.params.theta > 0.0;
    if (asymptote_defined) {
      const auto asym_path = out_dir / "ccf_asymptotic.csv";
      io::write_curve(asymptotic_curve(config.params, positive), asym_path);
      report.files.push_back(asym_path);
    }
  }

  report.outcomes = run_estimators(pair, config.params.kind,
                                   {EstimatorMethod::ccf_decay, EstimatorMethod::cross_periodogram},
                                   config.estimators);
  std::vector<HurstEstimate> estimates;
  for (const auto& o : report.outcomes) {
    if (o.estimate) estimates.push_back(*o.estimate);
  }
  const auto est_path = out_dir / "estimates.csv";
  io::write_text(est_path, io::format_estimates(estimates));
  report.files.push_back(est_path);

  const auto report_path = out_dir / "report.txt";
  io::write_text(report_path, format_report(report));
  report.files.push_back(report_path);
  return report;
}

std::string format_report(const SingleRunReport& report) {
  std::ostringstream os;
  os << "theory_H_xy = " << io::format_double(report.theory) << '\n';
  for (const auto& o : report.outcomes) {
    const auto name = to_string(o.method);
    if (o.estimate) {
      os << name << ".status = ok\n";
      os << name << ".H_xy = " << io::format_double(o.estimate->hxy) << '\n';
      os << name << ".slope_stderr = " << io::format_double(o.estimate->slope_stderr) << '\n';
    } else {
      os << name << ".status = " << error_name(o.error.value_or(ErrorCode::invalid_argument)) << '\n';
      os << name << ".message = " << o.message << '\n';
    }
  }
  return os.str();
}

void SweepConfig::validate() const {
  require(replicas >= 1, ErrorCode::invalid_argument, "replicas must be at least 1");
  require(!estimators.empty(), ErrorCode::invalid_argument, "at least one estimator is required");
  SimulationConfig{length, burn_in, base_seed}.validate();
  const auto cell_list = cells();
  require(!cell_list.empty(), ErrorCode::invalid_argument, "sweep grid is empty");
  require(cell_list.size() < (std::uint64_t{1} << 32) && replicas < (std::uint64_t{1} << 32),
          ErrorCode::invalid_argument, "sweep grid too large for seed splitting");
  for (const auto& c : cell_list) c.validate();
}

std::vector<PairParams> SweepConfig::cells() const {
  std::vector<PairParams> out;
  const auto& second = kind == PairKind::arfima_arfima ? d2 : theta;
  for (const double a : d1) {
    for (const double b : second) {
      for (const double cov : sigma_ev) {
        PairParams p;
        p.kind = kind;
        p.d1 = a;
        (kind == PairKind::arfima_arfima ? p.d2 : p.theta) = b;
        p.innovations = {sigma_e2, sigma_v2, cov};
        out.push_back(p);
      }
    }
  }
  return out;
}

void SweepConfig::set(std::string_view key, std::string_view value) {
  if (key == "kind") {
    kind = pair_kind_from_string(value);
  } else if (key == "d1") {
    d1 = parse_list(value);
  } else if (key == "d2") {
    d2 = parse_list(value);
  } else if (key == "theta") {
    theta = parse_list(value);
  } else if (key == "sigma_ev") {
    sigma_ev = parse_list(value);
  } else if (key == "sigma_e2") {
    sigma_e2 = io::parse_double(value);
  } else if (key == "sigma_v2") {
    sigma_v2 = io::parse_double(value);
  } else if (key == "n" || key == "N") {
    length = io::parse_unsigned(value);
  } else if (key == "burn_in") {
    burn_in = io::parse_unsigned(value);
  } else if (key == "replicas") {
    replicas = io::parse_unsigned(value);
  } else if (key == "seed") {
    base_seed = io::parse_unsigned(value);
  } else if (key == "estimators") {
    estimators.clear();
    for (const auto item : io::split_csv_line(value)) estimators.push_back(estimator_from_string(item));
  } else if (key == "window") {
    const auto parts = io::split_csv_line(value);
    require(parts.size() == 2, ErrorCode::parse, "window expects 'lo,hi'");
    options.window = LagWindow{io::parse_signed(parts[0]), io::parse_signed(parts[1])};
  } else if (key == "m") {
    options.bandwidth = io::parse_unsigned(value);
  } else if (key == "ccf_points") {
    options.ccf_points = io::parse_unsigned(value);
  } else if (key == "out") {
    output = std::string(value);
  } else {
    fail(ErrorCode::parse, "unknown sweep setting '" + std::string(key) + "'");
  }
}

SweepConfig parse_sweep_config(std::string_view text) {
  SweepConfig cfg;
  for (const auto& [key, value] : io::parse_key_values(text)) cfg.set(key, value);
  return cfg;
}

std::uint64_t SweepRow::count(ReplicaStatus s) const {
  return static_cast<std::uint64_t>(std::count(status.begin(), status.end(), s));
}

std::pair<double, double> aggregate(const std::vector<double>& values, const std::vector<ReplicaStatus>& status) {
  double sum = 0.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (status[i] != ReplicaStatus::ok) continue;
    sum += values[i];
    ++ok;
  }
  if (ok == 0) return {std::nan(""), std::nan("")};
  const double mean = sum / static_cast<double>(ok);
  if (ok == 1) return {mean, 0.0};
  double ss = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (status[i] != ReplicaStatus::ok) continue;
    ss += (values[i] - mean) * (values[i] - mean);
  }
  return {mean, std::sqrt(ss / static_cast<double>(ok - 1))};
}

SweepResult run_sweep(const SweepConfig& sweep, unsigned jobs) {
  sweep.validate();
  const auto cells = sweep.cells();
  const std::uint64_t reps = sweep.replicas;
  const std::size_t n_methods = sweep.estimators.size();

  SweepResult result{sweep.length, reps, sweep.base_seed, {}};
  for (std::uint64_t c = 0; c < cells.size(); ++c) {
    for (const auto method : sweep.estimators) {
      SweepRow row;
      row.cell = c;
      row.params = cells[c];
      row.method = method;
      row.theory = theoretical_hxy(cells[c]);
      row.values.assign(reps, std::nan(""));
      row.status.assign(reps, ReplicaStatus::failed);
      result.rows.push_back(std::move(row));
    }
  }

  // Each task writes only its own (cell, replica) slots.
  const std::uint64_t total = cells.size() * reps;
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&] {
    try {
      for (std::uint64_t task = next++; task < total; task = next++) {
        const std::uint64_t c = task / reps;
        const std::uint64_t r = task % reps;
        const SimulationConfig sim{sweep.length, sweep.burn_in, split_seed(sweep.base_seed, c, r)};
        const auto pair = simulate(cells[c], sim);
        const auto outcomes = run_estimators(pair, cells[c].kind, sweep.estimators, sweep.options);
        for (std::size_t k = 0; k < n_methods; ++k) {
          auto& row = result.rows[c * n_methods + k];
          if (outcomes[k].estimate) {
            row.values[r] = outcomes[k].estimate->hxy;
            row.status[r] = ReplicaStatus::ok;
          } else {
            row.status[r] = outcomes[k].error == ErrorCode::sign_instability ? ReplicaStatus::sign_unstable
                                                                              : ReplicaStatus::failed;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      next = total;
    }
  };

  const unsigned threads = std::max(1u, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  for (auto& row : result.rows) std::tie(row.mean, row.sd) = aggregate(row.values, row.status);
  return result;
}

namespace {

constexpr std::string_view kSweepHeader =
    "cell,kind,d1,d2,theta,sigma_e2,sigma_v2,sigma_ev,N,R,base_seed,estimator,theory,mean,sd,n_ok,"
    "n_sign_unstable,n_failed,replicas";

}  // namespace

std::string format_sweep_result(const SweepResult& result) {
  std::string text(kSweepHeader);
  text += '\n';
  for (const auto& row : result.rows) {
    const auto& p = row.params;
    std::ostringstream os;
    os << row.cell << ',' << to_string(p.kind) << ',' << io::format_double(p.d1) << ','
       << io::format_double(p.d2) << ',' << io::format_double(p.theta) << ','
       << io::format_double(p.innovations.sigma_e2) << ',' << io::format_double(p.innovations.sigma_v2) << ','
       << io::format_double(p.innovations.sigma_ev) << ',' << result.length << ',' << result.replicas << ','
       << result.base_seed << ',' << to_string(row.method) << ',' << io::format_double(row.theory) << ','
       << io::format_double(row.mean) << ',' << io::format_double(row.sd) << ','
       << row.count(ReplicaStatus::ok) << ',' << row.count(ReplicaStatus::sign_unstable) << ','
       << row.count(ReplicaStatus::failed) << ',';
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      if (i > 0) os << ';';
      if (row.status[i] == ReplicaStatus::ok) {
        os << io::format_double(row.values[i]);
      } else {
        os << status_token(row.status[i]);
      }
    }
    text += os.str();
    text += '\n';
  }
  return text;
}

SweepResult parse_sweep_result(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < text.size();) {
    const auto end = text.find('\n', start);
    lines.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  require(!lines.empty() && lines.front() == kSweepHeader, ErrorCode::parse,
          "sweep result: unexpected header");
  SweepResult result;
  bool first = true;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = io::split_csv_line(lines[i]);
    require(cols.size() == 19, ErrorCode::parse,
            "sweep result line " + std::to_string(i + 1) + ": expected 19 columns");
    SweepRow row;
    row.cell = io::parse_unsigned(cols[0]);
    row.params.kind = pair_kind_from_string(cols[1]);
    row.params.d1 = io::parse_double(cols[2]);
    row.params.d2 = io::parse_double(cols[3]);
    row.params.theta = io::parse_double(cols[4]);
    row.params.innovations = {io::parse_double(cols[5]), io::parse_double(cols[6]), io::parse_double(cols[7])};
    const auto length = io::parse_unsigned(cols[8]);
    const auto reps = io::parse_unsigned(cols[9]);
    const auto seed = io::parse_unsigned(cols[10]);
    if (first) {
      result.length = length;
      result.replicas = reps;
      result.base_seed = seed;
      first = false;
    }
    require(length == result.length && reps == result.replicas && seed == result.base_seed, ErrorCode::parse,
            "sweep result line " + std::to_string(i + 1) + ": inconsistent run settings");
    row.method = estimator_from_string(cols[11]);
    row.theory = io::parse_double(cols[12]);
    row.mean = io::parse_double(cols[13]);
    row.sd = io::parse_double(cols[14]);
    auto list = cols[18];
    while (true) {
      const auto semi = list.find(';');
      const auto item = list.substr(0, semi);
      if (item == "sign_unstable") {
        row.values.push_back(std::nan(""));
        row.status.push_back(ReplicaStatus::sign_unstable);
      } else if (item == "failed") {
        row.values.push_back(std::nan(""));
        row.status.push_back(ReplicaStatus::failed);
      } else {
        row.values.push_back(io::parse_double(item));
        row.status.push_back(ReplicaStatus::ok);
      }
      if (semi == std::string_view::npos) break;
      list.remove_prefix(semi + 1);
    }
    const auto n_ok = io::parse_unsigned(cols[15]);
    const auto n_sign = io::parse_unsigned(cols[16]);
    const auto n_failed = io::parse_unsigned(cols[17]);
    require(n_ok == row.count(ReplicaStatus::ok) && n_sign == row.count(ReplicaStatus::sign_unstable) &&
                n_failed == row.count(ReplicaStatus::failed),
            ErrorCode::parse, "sweep result line " + std::to_string(i + 1) + ": status counts disagree with list");
    result.rows.push_back(std::move(row));
  }
  require(!result.rows.empty(), ErrorCode::parse, "sweep result has no rows");
  return result;
}

bool ClaimSummary::all_passed() const {
  return std::none_of(lines.begin(), lines.end(), [](const ClaimLine& l) { return l.status == ClaimStatus::fail; });
}

std::string ClaimSummary::format() const {
  std::string text;
  for (const auto& l : lines) {
    text += l.status == ClaimStatus::pass ? "PASS " : l.status == ClaimStatus::fail ? "FAIL " : "INFO ";
    text += l.claim;
    text += ": ";
    text += l.detail;
    text += '\n';
  }
  std::size_t failed = 0;
  std::size_t passed = 0;
  for (const auto& l : lines) {
    failed += l.status == ClaimStatus::fail;
    passed += l.status == ClaimStatus::pass;
  }
  text += "summary: " + std::to_string(passed) + " passed, " + std::to_string(failed) + " failed\n";
  return text;
}

ClaimSummary verify_claims(const SweepResult& result, const ClaimTolerances& tol) {
  ClaimSummary summary;
  const auto add = [&](bool ok, std::string claim, std::string detail) {
    summary.lines.push_back({ok ? ClaimStatus::pass : ClaimStatus::fail, std::move(claim), std::move(detail)});
  };
  const auto info = [&](std::string claim, std::string detail) {
    summary.lines.push_back({ClaimStatus::info, std::move(claim), std::move(detail)});
  };
  const auto reps = static_cast<double>(result.replicas);

  // Which rows have a usable mean; others are excluded from cross-cell comparisons.
  std::vector<bool> comparable(result.rows.size(), false);

  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    const auto name = describe_cell(row);

    const auto [mean, sd] = aggregate(row.values, row.status);
    const bool count_ok = row.values.size() == result.replicas && row.status.size() == result.replicas;
    const auto close = [&](double a, double b) {
      return (std::isnan(a) && std::isnan(b)) || std::abs(a - b) <= tol.aggregate_recompute;
    };
    const bool integrity = count_ok && close(mean, row.mean) && close(sd, row.sd);
    add(integrity, name + " integrity",
        integrity ? "replica list consistent with mean/sd"
                  : "stored mean " + io::format_double(row.mean) + " sd " + io::format_double(row.sd) +
                        " vs recomputed " + io::format_double(mean) + " / " + io::format_double(sd) +
                        ", replicas " + std::to_string(row.values.size()) + " of " +
                        std::to_string(result.replicas));
    if (!integrity) continue;

    const double ok_fraction = static_cast<double>(row.count(ReplicaStatus::ok)) / reps;
    const bool null_cell = row.params.innovations.sigma_ev == 0.0;

    if (null_cell) {
      if (row.method == EstimatorMethod::ccf_decay) {
        const double unstable = static_cast<double>(row.count(ReplicaStatus::sign_unstable)) / reps;
        add(unstable >= tol.null_sign_unstable_fraction, name + " null cross-memory detected",
            "sign-unstable fraction " + format_fixed(unstable, 2) + " (need >= " +
                format_fixed(tol.null_sign_unstable_fraction, 2) + ")");
      } else {
        info(name + " null cell", "periodogram magnitude does not depend on sigma_ev; mean " +
                                      format_fixed(mean) + ", not compared with theory");
      }
      continue;
    }

    if (ok_fraction < tol.min_success_fraction) {
      add(false, name + " success rate",
          "only " + format_fixed(ok_fraction, 2) + " of replicas succeeded (need >= " +
              format_fixed(tol.min_success_fraction, 2) + ")");
      continue;
    }
    comparable[i] = true;

    if (row.method == EstimatorMethod::cross_periodogram) {
      const double err = std::abs(mean - row.theory);
      add(err < tol.mean_vs_theory, name + " mean H_xy vs (H_x+H_y)/2",
          "|" + format_fixed(mean) + " - " + format_fixed(row.theory) + "| = " + format_fixed(err) + " (< " +
              format_fixed(tol.mean_vs_theory, 2) + ")");
    } else {
      info(name + " mean H_xy", format_fixed(mean) + " (theory " + format_fixed(row.theory) + ", sd " +
                                    format_fixed(sd) + ")");
    }
  }

  // Groups of cross-periodogram cells that differ only in theta, or only in a
  // nonzero sigma_ev, must agree on the mean exponent.
  const auto spread_check = [&](const std::string& label, auto key_of) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const auto& row = result.rows[i];
      if (!comparable[i] || row.method != EstimatorMethod::cross_periodogram) continue;
      if (auto key = key_of(row)) groups[*key].push_back(i);
    }
    for (const auto& [key, members] : groups) {
      if (members.size() < 2) continue;
      double lo = result.rows[members.front()].mean;
      double hi = lo;
      for (const auto m : members) {
        lo = std::min(lo, result.rows[m].mean);
        hi = std::max(hi, result.rows[m].mean);
      }
      add(hi - lo < tol.cross_cell_spread, label + " [" + key + "]",
          "max difference of means " + format_fixed(hi - lo) + " over " + std::to_string(members.size()) +
              " cells (< " + format_fixed(tol.cross_cell_spread, 2) + ")");
    }
  };

  spread_check("theta-invariance", [](const SweepRow& row) -> std::optional<std::string> {
    if (row.params.kind != PairKind::arfima_ar) return std::nullopt;
    return "d1=" + io::format_double(row.params.d1) + " sigma_ev=" + io::format_double(row.params.innovations.sigma_ev);
  });
  spread_check("sigma_ev-invariance", [](const SweepRow& row) -> std::optional<std::string> {
    std::string key = std::string(to_string(row.params.kind)) + " d1=" + io::format_double(row.params.d1);
    key += row.params.kind == PairKind::arfima_arfima ? " d2=" + io::format_double(row.params.d2)
                                                      : " theta=" + io::format_double(row.params.theta);
    return key;
  });

  if (summary.lines.empty()) info("sweep", "no rows to verify");
  return summary;
}

}  // namespace plxc
