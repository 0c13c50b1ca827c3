// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// nonzero when any selected criterion fails.
//
//   plxc_acceptance                 all criteria
//   plxc_acceptance --criterion 3   one criterion
//   plxc_acceptance --example ccf-sample-recovery

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "plxc/arfima.hpp"
#include "plxc/correlation.hpp"
#include "plxc/harness.hpp"
#include "plxc/hurst.hpp"
#include "plxc/io.hpp"
#include "plxc/special.hpp"

using namespace plxc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

const SweepRow& find_row(const SweepResult& r, const std::function<bool(const SweepRow&)>& match) {
  for (const auto& row : r.rows)
    if (match(row)) return row;
  throw std::runtime_error("sweep row not found");
}

// 1. Weights: recurrence vs gamma ratio, Stirling ratio.
Outcome weights() {
  using boost::multiprecision::cpp_dec_float_50;
  const auto start = Clock::now();
  double worst = 0.0;
  for (double d : {-0.4, -0.1, 0.1, 0.25, 0.45}) {
    const auto w = arfima_weights(FracDiffOrder(d), 50);
    const cpp_dec_float_50 dd(d);
    for (unsigned n = 0; n <= 50; ++n) {
      const cpp_dec_float_50 g =
          boost::multiprecision::tgamma(dd + n) /
          (boost::multiprecision::tgamma(cpp_dec_float_50(n + 1)) * boost::multiprecision::tgamma(dd));
      const double ref = g.convert_to<double>();
      worst = std::max(worst, std::abs(w[n] - ref) / std::abs(ref));
    }
  }
  const auto w = arfima_weights(FracDiffOrder(0.4), 1000);
  const double stirling = w[1000] / arfima_weight_asymptote(FracDiffOrder(0.4), 1000);
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-12 && std::abs(stirling - 1.0) <= 1e-3 && elapsed < 1.0;
  return {ok, "max rel err " + fmt(worst, 3) + " (<= 1e-12); Stirling ratio at j=1000 " + fmt(stirling, 8) +
                  " (within 1e-3); " + fmt(elapsed, 3) + " s (< 1 s)"};
}

// 2. Exact vs asymptotic cross-correlation at n = 1000.
Outcome exact_vs_asymptotic() {
  const InnovationSpec spec{1, 1, 0.5};
  const auto exact = exact_cross_correlation_arfima(1000, FracDiffOrder(0.4), FracDiffOrder(0.2), spec, 1'000'000);
  const double asym = asymptotic_cross_correlation_arfima(1000, FracDiffOrder(0.4), FracDiffOrder(0.2), spec);
  const double ratio = exact.value / asym;
  return {ratio >= 0.95 && ratio <= 1.05, "exact/asymptotic " + fmt(ratio, 6) + " (in [0.95, 1.05]); K = 1e6, tail <= " +
                                               fmt(exact.tail_bound / asym, 3) + " relative"};
}

// 3. H_xy = (H_x + H_y)/2 over d1, d2 in {0.1, 0.4}.
Outcome eq4_sweep() {
  SweepConfig cfg = parse_sweep_config(
      "kind = arfima_arfima\nd1 = 0.1, 0.4\nd2 = 0.1, 0.4\nsigma_ev = 0.5\nn = 65536\nreplicas = 100\nseed = 3\n"
      "estimators = cross_periodogram\n");
  const auto result = run_sweep(cfg, jobs());
  bool ok = true;
  std::string detail;
  for (const auto& row : result.rows) {
    const double err = std::abs(row.mean - row.theory);
    ok = ok && err < 0.05 && row.count(ReplicaStatus::ok) >= 80;
    detail += "(" + fmt(row.params.d1) + "," + fmt(row.params.d2) + "): " + fmt(row.mean) + " vs " + fmt(row.theory) +
              "; ";
  }
  return {ok, detail + "need |mean - theory| < 0.05"};
}

// 4. H_xy = (H_x + 0.5)/2 with theta invariance.
Outcome eq6_sweep() {
  SweepConfig cfg = parse_sweep_config(
      "kind = arfima_ar\nd1 = 0.4\ntheta = 0.1, 0.5, 0.9\nsigma_ev = 0.5\nn = 65536\nreplicas = 100\nseed = 4\n"
      "estimators = cross_periodogram\n");
  const auto result = run_sweep(cfg, jobs());
  bool ok = true;
  double lo = 1.0, hi = 0.0;
  std::string detail;
  for (const auto& row : result.rows) {
    ok = ok && std::abs(row.mean - 0.7) < 0.05 && row.count(ReplicaStatus::ok) >= 80;
    lo = std::min(lo, row.mean);
    hi = std::max(hi, row.mean);
    detail += "theta " + fmt(row.params.theta) + ": " + fmt(row.mean) + "; ";
  }
  ok = ok && hi - lo < 0.05;
  return {ok, detail + "need within 0.05 of 0.7; spread " + fmt(hi - lo) + " (< 0.05)"};
}

// 5. sigma_ev invariance and the null case.
Outcome sigma_ev_and_null() {
  SweepConfig cfg = parse_sweep_config(
      "kind = arfima_arfima\nd1 = 0.4\nd2 = 0.2\nsigma_ev = 0, 0.1, 0.9\nn = 65536\nreplicas = 100\nseed = 5\n"
      "estimators = ccf_decay, cross_periodogram\n");
  const auto result = run_sweep(cfg, jobs());
  const auto periodogram = [&](double sev) -> const SweepRow& {
    return find_row(result, [&](const SweepRow& r) {
      return r.method == EstimatorMethod::cross_periodogram && r.params.innovations.sigma_ev == sev;
    });
  };
  const double diff = std::abs(periodogram(0.1).mean - periodogram(0.9).mean);
  const auto& null_row = find_row(result, [](const SweepRow& r) {
    return r.method == EstimatorMethod::ccf_decay && r.params.innovations.sigma_ev == 0.0;
  });
  const double unstable = static_cast<double>(null_row.count(ReplicaStatus::sign_unstable)) / 100.0;
  const bool ok = diff < 0.05 && unstable >= 0.9;
  return {ok, "mean H_xy at sigma_ev 0.1 / 0.9: " + fmt(periodogram(0.1).mean) + " / " + fmt(periodogram(0.9).mean) +
                  ", diff " + fmt(diff) + " (< 0.05) " + (diff < 0.05 ? "ok" : "FAILED") +
                  "; null ccf_decay sign-unstable " + fmt(unstable, 3) + " (>= 0.9) " +
                  (unstable >= 0.9 ? "ok" : "FAILED")};
}

// 6. Inverse Fourier transform of the spectrum vs exact sums.
Outcome spectrum_consistency() {
  const auto start = Clock::now();
  const PairParams params{PairKind::arfima_arfima, 0.3, 0.1, 0.0, {1, 1, 0.5}};
  double worst = 0.0;
  for (int n = -20; n <= 20; ++n) {
    const double exact = exact_cross_correlation_arfima(n, FracDiffOrder(0.3), FracDiffOrder(0.1), params.innovations).value;
    worst = std::max(worst, std::abs(cross_correlation_from_spectrum(params, n) - exact) / std::abs(exact));
  }
  const double elapsed = seconds_since(start);
  return {worst < 0.01 && elapsed < 10.0,
          "max rel diff over |n| <= 20: " + fmt(worst, 3) + " (< 0.01); " + fmt(elapsed, 3) + " s (< 10 s)"};
}

// 7. Closed form proportional to the exact sum; incomplete gamma vs quadrature.
Outcome closed_form() {
  std::vector<double> ratios;
  for (int n : {50, 100, 200}) {
    const double exact = exact_cross_correlation_arfima_ar(-n, FracDiffOrder(0.4), ArCoefficient(0.5), {1, 1, 1}).value;
    ratios.push_back(closed_form_cross_correlation_arfima_ar(n, 0.4, 0.5) / exact);
  }
  double spread = 0.0;
  for (double r : ratios) spread = std::max(spread, std::abs(r / ratios.front() - 1.0));

  boost::math::quadrature::exp_sinh<double> integrator;
  double worst = 0.0;
  for (double s : {0.2, 0.4, 0.8, 2.5}) {
    for (double x : {0.1, 0.5, 1.5, 4.0, 12.0}) {
      const auto f = [&](double u) { return std::exp((s - 1.0) * std::log(x + u) - (x + u)); };
      const double ref = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-15);
      worst = std::max(worst, std::abs(upper_incomplete_gamma(s, x) - ref) / ref);
    }
  }
  return {spread < 0.02 && worst < 1e-8, "ratio spread over n in {50,100,200}: " + fmt(spread, 3) +
                                             " (< 0.02); incomplete gamma max rel err on 20 points " + fmt(worst, 3) +
                                             " (< 1e-8)"};
}

// 8. Determinism and order independence.
Outcome determinism() {
  const auto root = std::filesystem::temp_directory_path() / "plxc-acceptance-determinism";
  std::filesystem::remove_all(root);
  const SingleRunConfig single{{PairKind::arfima_arfima, 0.4, 0.2, 0.0, {1, 1, 0.5}}, {1u << 14, 0, 1}, {}, 0};
  const auto a = run_single(single, root / "a");
  run_single(single, root / "b");
  bool files_equal = true;
  for (const auto& f : a.files)
    files_equal = files_equal && io::read_text(f) == io::read_text(root / "b" / f.filename());

  const auto sweep = parse_sweep_config(
      "d1 = 0.1, 0.4\nd2 = 0.2\nsigma_ev = 0, 0.5\nn = 16384\nreplicas = 8\nseed = 8\n"
      "estimators = ccf_decay, cross_periodogram\n");
  const auto serial = format_sweep_result(run_sweep(sweep, 1));
  const auto parallel = format_sweep_result(run_sweep(sweep, 4));
  std::filesystem::remove_all(root);
  return {files_equal && serial == parallel,
          std::string("repeated run_single files ") + (files_equal ? "identical" : "DIFFER") +
              " (" + std::to_string(a.files.size()) + " files); serial vs 4-thread sweep CSV " +
              (serial == parallel ? "identical" : "DIFFER")};
}

// Spec example for estimate_hxy_ccf_decay on sample curves.
Outcome ccf_sample_recovery() {
  int hits = 0;
  double sum = 0.0;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto pair = simulate({PairKind::arfima_arfima, 0.4, 0.2, 0.0, {1, 1, 0.5}}, {1u << 16, 0, seed});
    try {
      const auto e = estimate_hxy_ccf_decay(sample_cross_correlation(pair, 200), {10, 200});
      hits += std::abs(e.hxy - 0.8) < 0.1;
      sum += e.hxy;
      ++ok;
    } catch (const Error&) {
    }
  }
  return {hits >= 80, "within 0.1 of 0.8 for " + std::to_string(hits) + " of 100 seeds (>= 80); mean over " +
                          std::to_string(ok) + " successful fits " + fmt(sum / std::max(ok, 1))};
}

struct Check {
  std::string id;
  std::string title;
  Outcome (*run)();
};

const std::vector<Check>& criteria() {
  static const std::vector<Check> list{
      {"1", "weight correctness", weights},
      {"2", "exact vs asymptotic cross-correlation", exact_vs_asymptotic},
      {"3", "H_xy = (H_x + H_y)/2 sweep", eq4_sweep},
      {"4", "H_xy = (H_x + 0.5)/2 with theta invariance", eq6_sweep},
      {"5", "sigma_ev invariance and null detection", sigma_ev_and_null},
      {"6", "spectrum / cross-correlation consistency", spectrum_consistency},
      {"7", "ARFIMA/AR(1) closed form and incomplete gamma", closed_form},
      {"8", "determinism and order independence", determinism},
  };
  return list;
}

const std::vector<Check>& examples() {
  static const std::vector<Check> list{
      {"ccf-sample-recovery", "ccf_decay on sample curves, N = 2^16, window [10, 200]", ccf_sample_recovery},
  };
  return list;
}

int run(const std::vector<const Check*>& selected, const char* label) {
  int failed = 0;
  for (const auto* c : selected) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c->run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s %s: %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", label, c->id.c_str(), c->title.c_str(),
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<const Check*> selected;
  const char* label = "criterion";
  for (int i = 1; i < argc; ++i) {
    const bool crit = std::strcmp(argv[i], "--criterion") == 0;
    const bool ex = std::strcmp(argv[i], "--example") == 0;
    if ((crit || ex) && i + 1 < argc) {
      const auto& pool = crit ? criteria() : examples();
      label = crit ? "criterion" : "example";
      const std::string id = argv[++i];
      for (const auto& c : pool)
        if (c.id == id) selected.push_back(&c);
      if (selected.empty()) {
        std::fprintf(stderr, "unknown %s '%s'\n", label, id.c_str());
        return 2;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N | --example NAME]\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty())
    for (const auto& c : criteria()) selected.push_back(&c);
  return run(selected, label);
}
