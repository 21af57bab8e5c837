#include "ramsey/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "ramsey/barrier.hpp"
#include "ramsey/exact.hpp"
#include "ramsey/oracle.hpp"

namespace ramsey {
namespace {

constexpr double kRefineFraction = 0.1;

// Calls fn(i) for i in [0, n) on a small worker pool.  Each index writes
// only its own slot, so the result does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
}

bool needs_amplitudes(const SweepConfig& c) { return c.has(Method::exact) || c.verify; }

void evaluate_into(SweepRow& row, const SweepConfig& config, const PhysicalParams& p) {
  const bool open = p.excited_channel_open();
  const bool at_threshold = p.delta == p.critical_detuning();
  const bool want_first = config.has(Method::direct) || config.has(Method::ultracold) ||
                          config.has(Method::series) || needs_amplitudes(config);
  const bool want_second = config.has(Method::series) || needs_amplitudes(config);

  if (config.has(Method::scl)) row.scl = p12_semiclassical(p, config.scl_phase);
  if (at_threshold) {
    // q = 0: the excited plane waves degenerate and P12 is zero by definition.
    for (Method m : config.methods)
      if (m != Method::scl) row.value(m) = 0.0;
    return;
  }

  AlphaMatrix first_alpha, second_alpha;
  if (want_first) first_alpha = alpha_from_matrices(0.0, p);
  if (want_second) second_alpha = alpha_from_matrices(p.second_barrier_start(), p);

  std::optional<DoubleBarrierAmplitudes> amps;
  if (needs_amplitudes(config)) {
    if (open) {
      amps = double_barrier_solve(first_alpha, second_alpha);
    } else {
      // Below cutoff P12 is zero by definition; the solve only feeds the
      // residual columns, so a breakdown there is not a row failure.
      try {
        amps = double_barrier_solve(first_alpha, second_alpha);
      } catch (const SingularSystem&) {
      }
    }
  }
  if (config.has(Method::exact)) {
    row.exact = amps && open ? p12_from_amplitude(amps->t12, p) : 0.0;
    if (amps) row.flux_residual = flux_residual(*amps, p);
  }
  if (config.verify && amps) {
    const auto sliced = integrate_sliced(p, SliceGrid::uniform(p, config.verify_slices));
    row.oracle_residual = amplitude_deviation(sliced, *amps);
  }

  if (config.has(Method::direct) || config.has(Method::ultracold) || config.has(Method::series)) {
    if (!open) {
      for (Method m : {Method::direct, Method::ultracold, Method::series})
        if (config.has(m)) row.value(m) = 0.0;
      return;
    }
    const ScatteringSet first = scattering_from_alpha(first_alpha);
    if (config.has(Method::direct)) row.direct = p12_direct(first, p);
    if (config.has(Method::ultracold)) row.ultracold = p12_ultracold(first, p);
    if (config.has(Method::series))
      row.series = p12_series(first, scattering_from_alpha(second_alpha), p);
  }
}

// Largest P12 per method over the base grid; refinement thresholds are
// fixed from these so inserted points cannot change them.
std::vector<double> column_maxima(const SweepConfig& c, const std::vector<SweepRow>& rows) {
  std::vector<double> out;
  for (Method m : c.methods) {
    double hi = 0.0;
    for (const auto& r : rows)
      if (auto v = r.value(m); v && std::isfinite(*v)) hi = std::max(hi, std::abs(*v));
    out.push_back(hi);
  }
  return out;
}

bool steep(const SweepConfig& c, const std::vector<double>& maxima, const SweepRow& a,
           const SweepRow& b) {
  for (std::size_t i = 0; i < c.methods.size(); ++i) {
    const auto va = a.value(c.methods[i]);
    const auto vb = b.value(c.methods[i]);
    if (va && vb && std::abs(*va - *vb) > kRefineFraction * maxima[i] && maxima[i] > 0.0)
      return true;
  }
  return false;
}

// Interior points of [a, b] in axis order.
void refine(const SweepConfig& c, const std::vector<double>& maxima, const SweepRow& a,
            const SweepRow& b, int level, std::vector<SweepRow>& out) {
  if (level >= c.depth || a.failed() || b.failed() || !steep(c, maxima, a, b)) return;
  const double mid = 0.5 * (a.axis + b.axis);
  if (!(mid > a.axis && mid < b.axis)) return;
  const SweepRow m = evaluate_point(c, mid);
  refine(c, maxima, a, m, level + 1, out);
  out.push_back(m);
  refine(c, maxima, m, b, level + 1, out);
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::scl: return "scl";
    case Method::direct: return "direct";
    case Method::ultracold: return "ultracold";
    case Method::series: return "series";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods)
    if (method_name(m) == name) return m;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected exact, scl, direct, ultracold or series)");
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const Method m = parse_method(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

std::string_view axis_name(Axis a) { return a == Axis::delta ? "delta" : "k"; }

Axis parse_axis(std::string_view name) {
  if (name == "delta") return Axis::delta;
  if (name == "k") return Axis::k;
  throw ConfigError("unknown axis '" + std::string(name) + "' (expected delta or k)");
}

void SweepConfig::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    throw ConfigError("sweep range needs finite min < max");
  if (points < 2) throw ConfigError("sweep needs at least 2 points");
  if (methods.empty()) throw ConfigError("no methods selected");
  if (depth < 0 || depth > kMaxRefinementDepth)
    throw ConfigError("refinement depth must be in [0, 12]");
  if (verify_slices < 1) throw ConfigError("verify slices must be >= 1");
  if (axis == Axis::k && !(min > 0.0)) throw ConfigError("k sweep needs min > 0");
  try {
    at(min).validate();
    at(max).validate();
  } catch (const InvalidParameters& e) {
    throw ConfigError(e.what());
  }
}

bool SweepConfig::has(Method m) const {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

PhysicalParams SweepConfig::at(double axis_value) const {
  PhysicalParams p = params;
  (axis == Axis::delta ? p.delta : p.k) = axis_value;
  return p;
}

std::vector<double> SweepConfig::grid() const {
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double step = (max - min) / (points - 1);
  for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = min + step * i;
  xs.back() = max;
  return xs;
}

std::optional<double> SweepRow::value(Method m) const {
  return const_cast<SweepRow*>(this)->value(m);
}

std::optional<double>& SweepRow::value(Method m) {
  switch (m) {
    case Method::exact: return exact;
    case Method::scl: return scl;
    case Method::direct: return direct;
    case Method::ultracold: return ultracold;
    case Method::series: return series;
  }
  return exact;
}

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed(); }));
}

double SweepResult::failure_rate() const {
  return rows.empty() ? 0.0 : static_cast<double>(failures()) / static_cast<double>(rows.size());
}

SweepRow evaluate_point(const SweepConfig& config, double axis_value) {
  SweepRow row;
  row.axis = axis_value;
  try {
    const PhysicalParams p = config.at(axis_value);
    p.validate();
    evaluate_into(row, config, p);
    for (Method m : config.methods)
      if (auto v = row.value(m); v && !std::isfinite(*v))
        throw SingularSystem(std::string(method_name(m)) + " produced a non-finite value", 0.0);
  } catch (const std::exception& e) {
    SweepRow failed;
    failed.axis = axis_value;
    failed.error = e.what();
    return failed;
  }
  return row;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  SweepResult result;
  result.config = config;
  const std::vector<double> xs = config.grid();
  std::vector<SweepRow> base(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { base[i] = evaluate_point(config, xs[i]); });

  if (!config.adaptive || config.depth == 0) {
    result.rows = std::move(base);
    return result;
  }
  const std::vector<double> maxima = column_maxima(config, base);
  std::vector<std::vector<SweepRow>> inserted(base.size() - 1);
  parallel_for(inserted.size(), [&](std::size_t i) {
    refine(config, maxima, base[i], base[i + 1], 0, inserted[i]);
  });
  for (std::size_t i = 0; i < base.size(); ++i) {
    result.rows.push_back(std::move(base[i]));
    if (i < inserted.size())
      for (auto& r : inserted[i]) result.rows.push_back(std::move(r));
  }
  return result;
}

}  // namespace ramsey
