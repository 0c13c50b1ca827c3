#include "plxc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "plxc/error.hpp"

namespace plxc::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto end = text.find('\n');
    lines.push_back(text.substr(0, end));
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return lines;
}

template <typename T>
T parse_integer(std::string_view text, const char* what) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(), ErrorCode::parse,
          std::string("expected ") + what + ", got '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) fail(ErrorCode::io, "number formatting failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (text == "nan") return std::nan("");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(), ErrorCode::parse,
          "expected a number, got '" + std::string(text) + "'");
  return value;
}

std::uint64_t parse_unsigned(std::string_view text) { return parse_integer<std::uint64_t>(text, "an unsigned integer"); }

std::int64_t parse_signed(std::string_view text) { return parse_integer<std::int64_t>(text, "an integer"); }

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  int line_no = 0;
  for (auto line : lines_of(text)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string_view::npos, ErrorCode::parse,
            "line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    require(!key.empty(), ErrorCode::parse, "line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  require(!out.fail(), ErrorCode::io, "write to '" + path.string() + "' failed");
}

std::filesystem::path meta_path_for(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".meta");
  return p;
}

std::string format_meta(const SeriesMeta& meta) {
  const auto& p = meta.params;
  std::ostringstream os;
  os << "kind = " << to_string(p.kind) << '\n';
  os << "d1 = " << format_double(p.d1) << '\n';
  if (p.kind == PairKind::arfima_arfima) {
    os << "d2 = " << format_double(p.d2) << '\n';
  } else {
    os << "theta = " << format_double(p.theta) << '\n';
  }
  os << "sigma_e2 = " << format_double(p.innovations.sigma_e2) << '\n';
  os << "sigma_v2 = " << format_double(p.innovations.sigma_v2) << '\n';
  os << "sigma_ev = " << format_double(p.innovations.sigma_ev) << '\n';
  os << "N = " << meta.length << '\n';
  os << "M = " << meta.burn_in << '\n';
  os << "seed = " << meta.seed << '\n';
  return os.str();
}

SeriesMeta parse_meta(std::string_view text) {
  std::map<std::string, std::string> kv;
  for (auto& [k, v] : parse_key_values(text)) kv[k] = v;
  const auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    require(it != kv.end(), ErrorCode::parse, "metadata is missing '" + key + "'");
    return it->second;
  };
  SeriesMeta meta;
  meta.params.kind = pair_kind_from_string(get("kind"));
  meta.params.d1 = parse_double(get("d1"));
  if (meta.params.kind == PairKind::arfima_arfima) {
    meta.params.d2 = parse_double(get("d2"));
  } else {
    meta.params.theta = parse_double(get("theta"));
  }
  meta.params.innovations = {parse_double(get("sigma_e2")), parse_double(get("sigma_v2")),
                             parse_double(get("sigma_ev"))};
  meta.length = parse_unsigned(get("N"));
  meta.burn_in = parse_unsigned(get("M"));
  meta.seed = parse_unsigned(get("seed"));
  meta.params.validate();
  return meta;
}

void write_series(const SeriesPair& pair, const std::filesystem::path& csv_path) {
  std::string text = "x,y\n";
  for (std::size_t t = 0; t < pair.size(); ++t) {
    text += format_double(pair.x()[t]);
    text += ',';
    text += format_double(pair.y()[t]);
    text += '\n';
  }
  write_text(csv_path, text);
  if (pair.meta()) write_text(meta_path_for(csv_path), format_meta(*pair.meta()));
}

SeriesPair read_series(const std::filesystem::path& csv_path) {
  const std::string text = read_text(csv_path);
  const auto lines = lines_of(text);
  require(!lines.empty() && trim(lines.front()) == "x,y", ErrorCode::parse,
          "'" + csv_path.string() + "': expected header 'x,y'");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto cols = split_csv_line(line);
    require(cols.size() == 2, ErrorCode::parse,
            "'" + csv_path.string() + "' line " + std::to_string(i + 1) + ": expected two columns");
    x.push_back(parse_double(cols[0]));
    y.push_back(parse_double(cols[1]));
  }
  std::optional<SeriesMeta> meta;
  if (const auto mp = meta_path_for(csv_path); std::filesystem::exists(mp)) meta = parse_meta(read_text(mp));
  return SeriesPair(std::move(x), std::move(y), std::move(meta));
}

std::string format_curve(const CrossCorrelationCurve& curve) {
  std::string text = "lag,value,kind\n";
  const auto kind = std::string(to_string(curve.kind));
  for (std::size_t i = 0; i < curve.size(); ++i) {
    text += std::to_string(curve.lags[i]);
    text += ',';
    text += format_double(curve.values[i]);
    text += ',';
    text += kind;
    text += '\n';
  }
  return text;
}

void write_curve(const CrossCorrelationCurve& curve, const std::filesystem::path& path) {
  write_text(path, format_curve(curve));
}

CrossCorrelationCurve read_curve(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const auto lines = lines_of(text);
  require(!lines.empty() && trim(lines.front()) == "lag,value,kind", ErrorCode::parse,
          "'" + path.string() + "': expected header 'lag,value,kind'");
  CrossCorrelationCurve curve;
  bool first = true;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto cols = split_csv_line(line);
    require(cols.size() == 3, ErrorCode::parse,
            "'" + path.string() + "' line " + std::to_string(i + 1) + ": expected three columns");
    const auto kind = curve_kind_from_string(trim(cols[2]));
    require(first || kind == curve.kind, ErrorCode::parse, "'" + path.string() + "': mixed curve kinds");
    curve.kind = kind;
    first = false;
    curve.lags.push_back(parse_signed(cols[0]));
    curve.values.push_back(parse_double(cols[1]));
  }
  curve.validate();
  return curve;
}

std::string format_spectrum(std::span<const SpectrumPoint> points) {
  std::string text = "lambda,re,im\n";
  for (const auto& p : points) {
    text += format_double(p.lambda) + ',' + format_double(p.value.real()) + ',' + format_double(p.value.imag()) + '\n';
  }
  return text;
}

std::string format_estimate_row(const HurstEstimate& e) {
  return std::string(to_string(e.method)) + ',' + format_double(e.hxy) + ',' + format_double(e.slope_stderr) + ',' +
         format_double(e.window_lo) + ',' + format_double(e.window_hi) + ',' + std::to_string(e.n_points);
}

std::string format_estimates(std::span<const HurstEstimate> estimates) {
  std::string text(kEstimateHeader);
  text += '\n';
  for (const auto& e : estimates) text += format_estimate_row(e) + '\n';
  return text;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cols;
  while (true) {
    const auto comma = line.find(',');
    cols.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return cols;
}

}  // namespace plxc::io
