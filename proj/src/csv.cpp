#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "ramsey/sweep.hpp"

namespace ramsey {
namespace {

constexpr std::array<std::string_view, 7> kColumns{
    "axis", "p12_exact", "p12_scl", "p12_direct", "p12_ultracold", "flux_residual",
    "oracle_residual"};
constexpr std::string_view kSeriesColumn = "p12_series";

void put(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

void put(std::ostream& out, const std::optional<double>& v) {
  if (v) put(out, *v);
}

std::optional<double> field(std::string_view text, std::size_t line) {
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError("line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) return out;
    line.remove_prefix(comma + 1);
  }
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& result) {
  const bool series = result.config.has(Method::series);
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  if (series) out << ',' << kSeriesColumn;
  out << '\n';
  for (const SweepRow& r : result.rows) {
    put(out, r.axis);
    for (const auto* v : {&r.exact, &r.scl, &r.direct, &r.ultracold, &r.flux_residual,
                          &r.oracle_residual}) {
      out << ',';
      put(out, *v);
    }
    if (series) {
      out << ',';
      put(out, r.series);
    }
    out << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV");
  const auto header = split(line);
  const bool series = header.size() == kColumns.size() + 1 && header.back() == kSeriesColumn;
  if (header.size() != kColumns.size() + (series ? 1 : 0) ||
      !std::equal(kColumns.begin(), kColumns.end(), header.begin()))
    throw ConfigError("unexpected CSV header: " + line);

  std::vector<SweepRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw ConfigError("line " + std::to_string(number) + ": expected " +
                        std::to_string(header.size()) + " fields");
    SweepRow r;
    const auto axis = field(cells[0], number);
    if (!axis) throw ConfigError("line " + std::to_string(number) + ": missing axis value");
    r.axis = *axis;
    r.exact = field(cells[1], number);
    r.scl = field(cells[2], number);
    r.direct = field(cells[3], number);
    r.ultracold = field(cells[4], number);
    r.flux_residual = field(cells[5], number);
    r.oracle_residual = field(cells[6], number);
    if (series) r.series = field(cells[7], number);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ramsey
