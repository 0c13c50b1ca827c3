#include "plxc/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plxc/error.hpp"

namespace plxc {

namespace {

std::string describe(const char* name, double value) {
  std::ostringstream os;
  os.precision(17);
  os << name << " = " << value;
  return os.str();
}

}  // namespace

FracDiffOrder::FracDiffOrder(double d) : d_(d) {
  require(std::isfinite(d) && d > -0.5 && d < 0.5, ErrorCode::invalid_argument,
          describe("fractional order must satisfy -0.5 < d < 0.5, got d", d));
}

ArCoefficient::ArCoefficient(double theta) : theta_(theta) {
  require(std::isfinite(theta) && std::abs(theta) < 1.0, ErrorCode::invalid_argument,
          describe("AR coefficient must satisfy |theta| < 1, got theta", theta));
}

void InnovationSpec::validate() const {
  require(std::isfinite(sigma_e2) && std::isfinite(sigma_v2) && std::isfinite(sigma_ev),
          ErrorCode::invalid_argument, "innovation moments must be finite");
  require(sigma_e2 >= 0.0, ErrorCode::invalid_argument, describe("negative variance sigma_e2", sigma_e2));
  require(sigma_v2 >= 0.0, ErrorCode::invalid_argument, describe("negative variance sigma_v2", sigma_v2));
  require(sigma_ev * sigma_ev <= sigma_e2 * sigma_v2, ErrorCode::invalid_argument,
          describe("innovation covariance is not positive semidefinite: sigma_ev", sigma_ev));
}

double InnovationSpec::sigma_e() const { return std::sqrt(sigma_e2); }
double InnovationSpec::sigma_v() const { return std::sqrt(sigma_v2); }

std::uint64_t default_burn_in(std::uint64_t length) {
  return std::max<std::uint64_t>(length, std::uint64_t{1} << 14);
}

std::uint64_t SimulationConfig::effective_burn_in() const {
  return burn_in == 0 ? default_burn_in(length) : burn_in;
}

void SimulationConfig::validate() const {
  require(length >= 1, ErrorCode::invalid_argument, "series length must be positive");
  require(effective_burn_in() >= length, ErrorCode::invalid_argument,
          "burn-in must be at least the series length");
}

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::arfima_arfima:
      return "arfima_arfima";
    case PairKind::arfima_ar:
      return "arfima_ar";
  }
  return "unknown";
}

PairKind pair_kind_from_string(std::string_view text) {
  if (text == "arfima_arfima") return PairKind::arfima_arfima;
  if (text == "arfima_ar") return PairKind::arfima_ar;
  fail(ErrorCode::parse, "unknown process pair kind '" + std::string(text) + "'");
}

void PairParams::validate() const {
  (void)FracDiffOrder(d1);
  if (kind == PairKind::arfima_arfima) {
    (void)FracDiffOrder(d2);
  } else {
    (void)ArCoefficient(theta);
  }
  innovations.validate();
}

SeriesPair::SeriesPair(std::vector<double> x, std::vector<double> y, std::optional<SeriesMeta> meta)
    : x_(std::move(x)), y_(std::move(y)), meta_(std::move(meta)) {
  require(!x_.empty(), ErrorCode::invalid_argument, "series must be non-empty");
  require(x_.size() == y_.size(), ErrorCode::invalid_argument, "series lengths differ");
  const auto finite = [](double v) { return std::isfinite(v); };
  require(std::all_of(x_.begin(), x_.end(), finite) && std::all_of(y_.begin(), y_.end(), finite),
          ErrorCode::invalid_argument, "series contain non-finite values");
}

SeriesPair SeriesPair::swapped() const { return SeriesPair(y_, x_, std::nullopt); }

}  // namespace plxc
