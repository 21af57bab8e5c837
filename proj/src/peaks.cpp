#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ramsey/sweep.hpp"

namespace ramsey {
namespace {

struct Vertex {
  double x, y;
};

// Parabola through three samples (spacing may be uneven); falls back to the
// middle sample when the curvature is not negative.
Vertex parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double f01 = (y1 - y0) / (x1 - x0);
  const double f12 = (y2 - y1) / (x2 - x1);
  const double a = (f12 - f01) / (x2 - x0);
  if (!(a < 0.0)) return {x1, y1};
  const double b = f01 - a * (x0 + x1);
  const double xv = std::clamp(-b / (2.0 * a), x0, x2);
  const double yv = y0 + f01 * (xv - x0) + a * (xv - x0) * (xv - x1);
  return {xv, std::max(yv, y1)};
}

double crossing(double xa, double ya, double xb, double yb, double level) {
  return xa + (level - ya) * (xb - xa) / (yb - ya);
}

void annotate(PeakReport& report, const SweepResult& result) {
  const auto& p = result.config.params;
  if (result.config.axis != Axis::delta || !(p.gap > 0.0) || report.peaks.empty()) return;
  const double top = std::max(0.0, result.config.max);
  const int n_max = static_cast<int>(std::ceil(p.gap / std::numbers::pi *
                                               std::sqrt(p.k * p.k + 2.0 * top))) + 2;
  const auto estimates = resonance_estimates(p.k, p.gap, n_max);
  if (estimates.empty()) return;
  for (Peak& peak : report.peaks) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < estimates.size(); ++j)
      if (std::abs(estimates[j].delta_n - peak.position) <
          std::abs(estimates[best].delta_n - peak.position))
        best = j;
    const double dn = estimates[best].delta_n;
    const bool above = peak.position >= dn;
    double spacing = std::numeric_limits<double>::quiet_NaN();
    if (above && best + 1 < estimates.size())
      spacing = estimates[best + 1].delta_n - dn;
    else if (!above && best > 0)
      spacing = dn - estimates[best - 1].delta_n;
    else if (best + 1 < estimates.size())
      spacing = estimates[best + 1].delta_n - dn;
    else if (best > 0)
      spacing = dn - estimates[best - 1].delta_n;
    peak.nearest_n = estimates[best].n;
    peak.nearest_delta_n = dn;
    peak.relative_offset = (peak.position - dn) / spacing;
  }
}

}  // namespace

PeakReport find_peaks(std::span<const double> x, std::span<const double> y,
                      double min_relative_height) {
  PeakReport report;
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 3) return report;
  const double top = *std::max_element(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  const double floor = min_relative_height * top;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1]) || y[i] < floor) continue;
    const Vertex v = parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
    const double half = 0.5 * v.y;

    std::size_t l = i;
    while (l > 0 && y[l - 1] >= half) --l;
    std::size_t r = i;
    while (r + 1 < n && y[r + 1] >= half) ++r;
    const bool has_left = l > 0;
    const bool has_right = r + 1 < n;
    if (!has_left && !has_right) continue;
    const double left = has_left ? crossing(x[l - 1], y[l - 1], x[l], y[l], half) : 0.0;
    const double right = has_right ? crossing(x[r], y[r], x[r + 1], y[r + 1], half) : 0.0;
    double fwhm;
    if (has_left && has_right)
      fwhm = right - left;
    else if (has_left)
      fwhm = 2.0 * (v.x - left);
    else
      fwhm = 2.0 * (right - v.x);
    if (!(fwhm > 0.0)) continue;

    Peak peak;
    peak.position = v.x;
    peak.height = v.y;
    peak.fwhm = fwhm;
    report.peaks.push_back(peak);
  }
  return report;
}

PeakReport find_peaks(const SweepResult& result, Method method, double min_relative_height) {
  std::vector<double> xs, ys;
  for (const SweepRow& r : result.rows)
    if (auto v = r.value(method)) {
      xs.push_back(r.axis);
      ys.push_back(*v);
    }
  PeakReport report = find_peaks(xs, ys, min_relative_height);
  annotate(report, result);
  return report;
}

MethodComparison compare_methods(const SweepResult& result, Method a, Method b,
                                 const std::function<bool(double)>& keep) {
  for (Method m : {a, b})
    if (!result.config.has(m))
      throw ConfigError("method " + std::string(method_name(m)) + " was not part of the sweep");
  MethodComparison out;
  double sum_sq = 0.0, sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
  for (const SweepRow& r : result.rows) {
    const auto va = r.value(a);
    const auto vb = r.value(b);
    if (!va || !vb || (keep && !keep(r.axis))) continue;
    const double d = *va - *vb;
    sum_sq += d * d;
    out.max_abs = std::max(out.max_abs, std::abs(d));
    sa += *va;
    sb += *vb;
    saa += *va * *va;
    sbb += *vb * *vb;
    sab += *va * *vb;
    ++out.count;
  }
  if (out.count == 0) {
    out.correlation = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double n = static_cast<double>(out.count);
  out.rms = std::sqrt(sum_sq / n);
  const double cov = sab - sa * sb / n;
  const double var_a = saa - sa * sa / n;
  const double var_b = sbb - sb * sb / n;
  out.correlation = var_a > 0.0 && var_b > 0.0 ? cov / std::sqrt(var_a * var_b)
                                               : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace ramsey
