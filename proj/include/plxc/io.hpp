#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plxc/correlation.hpp"
#include "plxc/hurst.hpp"
#include "plxc/types.hpp"

namespace plxc::io {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);
std::uint64_t parse_unsigned(std::string_view text);
std::int64_t parse_signed(std::string_view text);

/// `key = value` lines; blank lines and text after '#' are ignored.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// series.csv -> series.meta
std::filesystem::path meta_path_for(const std::filesystem::path& csv_path);

std::string format_meta(const SeriesMeta& meta);
SeriesMeta parse_meta(std::string_view text);

/// Two-column CSV with header `x,y`, plus the sidecar when the pair has metadata.
void write_series(const SeriesPair& pair, const std::filesystem::path& csv_path);
/// Reads the CSV and, if present, its sidecar.
SeriesPair read_series(const std::filesystem::path& csv_path);

/// `lag,value,kind`
std::string format_curve(const CrossCorrelationCurve& curve);
void write_curve(const CrossCorrelationCurve& curve, const std::filesystem::path& path);
CrossCorrelationCurve read_curve(const std::filesystem::path& path);

/// `lambda,re,im`
std::string format_spectrum(std::span<const SpectrumPoint> points);

/// `method,H_xy,slope_stderr,window_lo,window_hi,n_points`
inline constexpr std::string_view kEstimateHeader = "method,H_xy,slope_stderr,window_lo,window_hi,n_points";
std::string format_estimate_row(const HurstEstimate& estimate);
std::string format_estimates(std::span<const HurstEstimate> estimates);

/// Splits one CSV line on commas (no quoting; none of our files need it).
std::vector<std::string_view> split_csv_line(std::string_view line);

}  // namespace plxc::io
