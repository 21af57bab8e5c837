// ramsey_sweep: tabulate the excited-state transmission probability of a
// two-zone Ramsey setup over detuning or incident wavenumber.
//
//   ramsey_sweep --omega 0.15708 --gap 25 --min -0.5 --max 3 --points 2000 \
//       --methods exact,scl,direct --compare exact,direct --out fringe.csv
//
// Exit status: 0 ok, 1 bad configuration, 2 more than 1% of points failed.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "ramsey/sweep.hpp"

namespace {

using ramsey::Method;

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr double kMaxFailureRate = 0.01;

std::string joined(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ",") + item;
  return out;
}

void print_comparison(std::ostream& os, const ramsey::SweepResult& result, Method a, Method b) {
  const auto stats = ramsey::compare_methods(result, a, b);
  os << "compare " << ramsey::method_name(a) << " vs " << ramsey::method_name(b) << '\n'
     << std::left << std::setw(14) << "  rows" << stats.count << '\n'
     << std::setw(14) << "  rms" << stats.rms << '\n'
     << std::setw(14) << "  max_abs" << stats.max_abs << '\n'
     << std::setw(14) << "  correlation" << stats.correlation << '\n'
     << std::right;
}

void print_peaks(std::ostream& os, const ramsey::PeakReport& report, Method m) {
  os << "peaks (" << ramsey::method_name(m) << "): " << report.peaks.size() << '\n';
  if (report.peaks.empty()) return;
  os << std::setw(16) << "position" << std::setw(14) << "height" << std::setw(14) << "fwhm"
     << std::setw(5) << "n" << std::setw(16) << "delta_n" << std::setw(12) << "offset" << '\n';
  for (const auto& p : report.peaks) {
    os << std::setw(16) << p.position << std::setw(14) << p.height << std::setw(14) << p.fwhm;
    if (p.nearest_n)
      os << std::setw(5) << *p.nearest_n << std::setw(16) << p.nearest_delta_n << std::setw(12)
         << p.relative_offset;
    os << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey two-zone transmission sweep"};
  app.option_defaults()->always_capture_default();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "flat key = value file ('#' comments); flags override it");

  ramsey::PhysicalParams params;
  params.k = 1.0;
  params.omega = std::numbers::pi / 20.0;
  params.width = 1.0;
  params.gap = 25.0;
  std::string axis = "delta";
  std::optional<double> min, max;
  int points = 1001;
  std::vector<std::string> methods{"exact"};
  bool adaptive = false;
  int depth = ramsey::kMaxRefinementDepth;
  bool verify = false;
  int slices = 4;
  bool peaks = false;
  double peak_floor = 0.0;
  std::vector<std::string> compare;
  std::string scl_phase = "width";
  std::string out_path;

  app.add_option("--k", params.k, "incident wavenumber (fixed value on a delta sweep)");
  app.add_option("--omega", params.omega, "Rabi frequency inside the zones");
  app.add_option("--delta", params.delta, "detuning (fixed value on a k sweep)");
  app.add_option("--l", params.width, "zone width");
  app.add_option("--gap", params.gap, "field-free distance L between the zones");
  app.add_option("--axis", axis, "swept quantity")->check(CLI::IsMember({"delta", "k"}));
  app.add_option("--min", min, "sweep start (default: critical detuning, or 0.05 for k)");
  app.add_option("--max", max, "sweep end (default: 3 for delta, 5 for k)");
  app.add_option("--points", points, "base grid size");
  app.add_option("--methods", methods, "comma list of exact,scl,direct,ultracold,series")
      ->delimiter(',');
  app.add_flag("--adaptive", adaptive, "bisect steep intervals of the base grid");
  app.add_option("--depth", depth, "maximum bisection depth (<= 12)");
  app.add_flag("--verify", verify, "recompute every point with the sliced integrator");
  app.add_option("--slices", slices, "slices per region used by --verify");
  app.add_flag("--peaks", peaks, "report peaks of the first selected method");
  app.add_option("--peak-floor", peak_floor, "ignore peaks below this fraction of the maximum");
  app.add_option("--compare", compare, "two methods A,B to compare")->delimiter(',');
  app.add_option("--scl-phase", scl_phase, "length in the second semiclassical sine")
      ->check(CLI::IsMember({"width", "gap"}));
  app.add_option("--out", out_path, "CSV destination (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  ramsey::SweepConfig config;
  std::optional<std::pair<Method, Method>> pair;
  try {
    config.params = params;
    config.axis = ramsey::parse_axis(axis);
    const bool on_delta = config.axis == ramsey::Axis::delta;
    config.min = min.value_or(on_delta ? params.critical_detuning() : 0.05);
    config.max = max.value_or(on_delta ? 3.0 : 5.0);
    config.points = points;
    config.methods = ramsey::parse_methods(joined(methods));
    config.adaptive = adaptive;
    config.depth = depth;
    config.verify = verify;
    config.verify_slices = slices;
    config.scl_phase =
        scl_phase == "gap" ? ramsey::SemiclassicalPhase::gap : ramsey::SemiclassicalPhase::width;
    if (!compare.empty()) {
      const auto both = ramsey::parse_methods(joined(compare));
      if (both.size() != 2) throw ramsey::ConfigError("--compare needs two distinct methods");
      for (Method m : both)
        if (!config.has(m))
          throw ramsey::ConfigError("--compare method " + std::string(ramsey::method_name(m)) +
                                    " is not in --methods");
      pair.emplace(both[0], both[1]);
    }
    config.validate();
  } catch (const ramsey::Error& e) {
    std::cerr << "ramsey_sweep: " << e.what() << '\n';
    return kExitConfig;
  }

  const ramsey::SweepResult result = ramsey::run_sweep(config);

  // The reports go to stdout unless stdout carries the CSV.
  std::ostream* report = &std::cout;
  if (out_path.empty()) {
    ramsey::write_csv(std::cout, result);
    report = &std::cerr;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "ramsey_sweep: cannot open " << out_path << '\n';
      return kExitConfig;
    }
    ramsey::write_csv(file, result);
  }

  *report << "rows " << result.rows.size() << ", failed " << result.failures() << '\n';
  for (const auto& row : result.rows)
    if (row.failed()) *report << "  axis=" << row.axis << ": " << row.error << '\n';
  if (pair) print_comparison(*report, result, pair->first, pair->second);
  if (peaks) {
    const Method m = config.methods.front();
    print_peaks(*report, ramsey::find_peaks(result, m, peak_floor), m);
  }

  if (result.failure_rate() > kMaxFailureRate) {
    std::cerr << "ramsey_sweep: " << result.failures() << " of " << result.rows.size()
              << " points failed\n";
    return kExitNumerical;
  }
  return 0;
}
