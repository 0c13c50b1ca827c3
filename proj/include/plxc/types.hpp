#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plxc {

/// Fractional differencing order of an ARFIMA(0,d,0) process, -0.5 < d < 0.5.
class FracDiffOrder {
 public:
  explicit FracDiffOrder(double d);
  static FracDiffOrder from_hurst(double hurst) { return FracDiffOrder(hurst - 0.5); }

  double value() const noexcept { return d_; }
  double hurst() const noexcept { return d_ + 0.5; }

 private:
  double d_;
};

/// AR(1) coefficient, |theta| < 1.
class ArCoefficient {
 public:
  explicit ArCoefficient(double theta);
  double value() const noexcept { return theta_; }

 private:
  double theta_;
};

/// Second moments of the contemporaneous innovation pair (eps_t, nu_t).
struct InnovationSpec {
  double sigma_e2 = 1.0;
  double sigma_v2 = 1.0;
  double sigma_ev = 0.0;

  /// Throws invalid_argument unless the 2x2 covariance is finite and PSD.
  void validate() const;
  double sigma_e() const;
  double sigma_v() const;
};

struct SimulationConfig {
  std::uint64_t length = 1;
  std::uint64_t burn_in = 0;  // 0 selects max(length, 2^14)
  std::uint64_t seed = 0;

  /// burn_in with the default applied; throws if the result is below length.
  std::uint64_t effective_burn_in() const;
  void validate() const;
};

std::uint64_t default_burn_in(std::uint64_t length);

enum class PairKind { arfima_arfima, arfima_ar };

std::string_view to_string(PairKind kind);
PairKind pair_kind_from_string(std::string_view text);

/// Parameters of one bivariate process. `d2` is used for arfima_arfima,
/// `theta` for arfima_ar.
struct PairParams {
  PairKind kind = PairKind::arfima_arfima;
  double d1 = 0.0;
  double d2 = 0.0;
  double theta = 0.0;
  InnovationSpec innovations;

  void validate() const;
  FracDiffOrder first() const { return FracDiffOrder(d1); }
  FracDiffOrder second_order() const { return FracDiffOrder(d2); }
  ArCoefficient second_ar() const { return ArCoefficient(theta); }
};

struct SeriesMeta {
  PairParams params;
  std::uint64_t length = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;
};

/// Two equal-length sample paths. Immutable once built.
class SeriesPair {
 public:
  SeriesPair(std::vector<double> x, std::vector<double> y, std::optional<SeriesMeta> meta = std::nullopt);

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  std::size_t size() const noexcept { return x_.size(); }
  const std::optional<SeriesMeta>& meta() const noexcept { return meta_; }

  /// The same data with x and y exchanged.
  SeriesPair swapped() const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::optional<SeriesMeta> meta_;
};

}  // namespace plxc
