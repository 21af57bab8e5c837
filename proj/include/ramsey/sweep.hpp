#pragma once

// Parameter sweeps over detuning or incident wavenumber, with per-point
// evaluation of any subset of the exact and approximate P12 methods.

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/approx.hpp"
#include "ramsey/core.hpp"
#include "ramsey/errors.hpp"

namespace ramsey {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Method { exact, scl, direct, ultracold, series };

inline constexpr std::array<Method, 5> kAllMethods{Method::exact, Method::scl, Method::direct,
                                                   Method::ultracold, Method::series};

std::string_view method_name(Method m);
/// Throws ConfigError on an unknown name.
Method parse_method(std::string_view name);
/// Comma-separated list, duplicates dropped, order kept.
std::vector<Method> parse_methods(std::string_view list);

enum class Axis { delta, k };

std::string_view axis_name(Axis a);
Axis parse_axis(std::string_view name);

inline constexpr int kMaxRefinementDepth = 12;

struct SweepConfig {
  PhysicalParams params;  // the swept field is overwritten per point
  Axis axis = Axis::delta;
  double min = 0.0;
  double max = 1.0;
  int points = 101;
  std::vector<Method> methods{Method::exact};
  bool adaptive = false;
  int depth = kMaxRefinementDepth;
  bool verify = false;
  int verify_slices = 4;
  SemiclassicalPhase scl_phase = SemiclassicalPhase::width;

  /// Throws ConfigError.
  void validate() const;
  bool has(Method m) const;
  PhysicalParams at(double axis_value) const;
  /// The evenly spaced base grid, endpoints included.
  std::vector<double> grid() const;
};

struct SweepRow {
  double axis = 0.0;
  std::optional<double> exact, scl, direct, ultracold, series;
  std::optional<double> flux_residual;
  std::optional<double> oracle_residual;
  std::string error;  // empty unless the point failed

  std::optional<double> value(Method m) const;
  std::optional<double>& value(Method m);
  bool failed() const { return !error.empty(); }
  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;

  std::size_t failures() const;
  double failure_rate() const;
};

SweepRow evaluate_point(const SweepConfig& config, double axis_value);

/// Evaluates the base grid concurrently, then (if adaptive) bisects every
/// interval whose P12 jump in any selected column exceeds 0.1 of that
/// column's maximum on the base grid, down to `depth` levels.  Rows come
/// back sorted by axis value and are identical run to run.
SweepResult run_sweep(const SweepConfig& config);

/// Fixed-schema CSV; methods that were not run leave empty fields.  The
/// trailing p12_series column appears only when series was selected.
void write_csv(std::ostream& out, const SweepResult& result);
/// Inverse of write_csv (row errors are not part of the format).  Throws
/// ConfigError on malformed input.
std::vector<SweepRow> read_csv(std::istream& in);

struct Peak {
  double position = 0.0;
  double height = 0.0;
  double fwhm = 0.0;
  std::optional<int> nearest_n;
  double nearest_delta_n = 0.0;
  double relative_offset = 0.0;  // (position - delta_n) / local spacing of delta_n
};

struct PeakReport {
  std::vector<Peak> peaks;
};

/// Three-point local maxima refined by a parabola through the neighbours;
/// FWHM from linearly interpolated half-height crossings.  Peaks lower than
/// `min_relative_height` times the series maximum are ignored, as are peaks
/// whose half-height is never crossed on either side.
PeakReport find_peaks(std::span<const double> x, std::span<const double> y,
                      double min_relative_height = 0.0);

/// Peaks of one method column; on a detuning sweep with L > 0 each peak is
/// annotated with the nearest gap resonance estimate.
PeakReport find_peaks(const SweepResult& result, Method method, double min_relative_height = 0.0);

struct MethodComparison {
  std::size_t count = 0;
  double rms = 0.0;
  double max_abs = 0.0;
  double correlation = 0.0;  // NaN when either column is constant
};

/// Statistics over rows where both columns are present and `keep(axis)`
/// holds.  Throws ConfigError if a method was not part of the sweep.
MethodComparison compare_methods(const SweepResult& result, Method a, Method b,
                                 const std::function<bool(double)>& keep = {});

}  // namespace ramsey
