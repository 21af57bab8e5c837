#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "ramsey/sweep.hpp"
#include "support.hpp"

using namespace ramsey;

namespace {

SweepConfig fringe_config(int points = 600) {
  SweepConfig c;
  c.params = fixtures::fringe();
  c.min = c.params.critical_detuning();
  c.max = 3.0;
  c.points = points;
  c.methods = {Method::exact, Method::scl, Method::direct};
  return c;
}

SweepConfig ultracold_config(int points = 1500) {
  SweepConfig c;
  c.params = fixtures::ultracold();
  c.min = c.params.critical_detuning();
  c.max = 0.2;
  c.points = points;
  c.methods = {Method::exact, Method::ultracold};
  return c;
}

std::string csv_text(const SweepResult& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("method and axis names") {
  CHECK(parse_methods("exact,scl, direct") ==
        std::vector<Method>{Method::exact, Method::scl, Method::direct});
  CHECK(parse_methods("series,exact,series") == std::vector<Method>{Method::series, Method::exact});
  CHECK_THROWS_AS(parse_methods("exact,fast"), ConfigError);
  for (Method m : kAllMethods) CHECK(parse_method(method_name(m)) == m);
  CHECK(parse_axis("k") == Axis::k);
  CHECK_THROWS_AS(parse_axis("omega"), ConfigError);
}

TEST_CASE("config validation") {
  SweepConfig c = fringe_config();
  CHECK_NOTHROW(c.validate());
  SweepConfig bad = c;
  bad.max = bad.min;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.points = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.methods.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.depth = 13;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.params.omega = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.axis = Axis::k;
  bad.min = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("grid endpoints are exact") {
  const auto xs = fringe_config(7).grid();
  CHECK(xs.size() == 7);
  CHECK(xs.front() == -0.5);
  CHECK(xs.back() == 3.0);
}

TEST_CASE("fringe sweep") {
  const auto result = run_sweep(fringe_config());
  REQUIRE(result.rows.size() == 600);
  CHECK(result.failures() == 0);
  for (const auto& row : result.rows) {
    REQUIRE(row.exact);
    REQUIRE(*row.exact >= 0.0);
    REQUIRE(*row.exact <= 1.0 + 1e-9);
    REQUIRE(std::isfinite(*row.scl));
    REQUIRE(std::isfinite(*row.direct));
    CHECK(!row.ultracold);
    if (row.flux_residual) REQUIRE(*row.flux_residual < 1e-10);
  }
  CHECK(compare_methods(result, Method::exact, Method::direct).rms < 0.02);
}

TEST_CASE("ultracold sweep") {
  const auto result = run_sweep(ultracold_config());
  CHECK(result.failures() == 0);
  for (const auto& row : result.rows) {
    REQUIRE(std::isfinite(*row.ultracold));
    if (row.flux_residual) REQUIRE(*row.flux_residual < 1e-10);
  }
}

TEST_CASE("uncoupled sweep is identically zero") {
  SweepConfig c = fringe_config(2);
  c.params.omega = 0.0;
  c.methods = {kAllMethods.begin(), kAllMethods.end()};
  const auto result = run_sweep(c);
  REQUIRE(result.rows.size() == 2);
  for (const auto& row : result.rows)
    for (Method m : kAllMethods) CHECK(row.value(m) == 0.0);
}

TEST_CASE("verify column") {
  SweepConfig c = ultracold_config(30);
  c.verify = true;
  const auto result = run_sweep(c);
  for (const auto& row : result.rows)
    if (row.axis > c.min) {
      REQUIRE(row.oracle_residual);
      CHECK(*row.oracle_residual < 1e-8);
    }
}

TEST_CASE("failures are recorded per row") {
  SweepConfig c;
  c.params = fixtures::fringe(0.1);
  c.axis = Axis::k;
  c.min = 0.5;
  c.max = 2.0;
  c.methods = {Method::exact};
  const SweepRow row = evaluate_point(c, -1.0);
  CHECK(row.failed());
  CHECK(!row.exact);
  CHECK(row.error.find("k must be positive") != std::string::npos);

  SweepResult r;
  r.rows = {row, evaluate_point(c, 1.0)};
  CHECK(r.failures() == 1);
  CHECK(r.failure_rate() == 0.5);
}

TEST_CASE("k axis sweep") {
  SweepConfig c;
  c.params = fixtures::fringe(0.05);
  c.axis = Axis::k;
  c.min = 5.0;
  c.max = 80.0;
  c.points = 16;
  c.methods = {Method::exact, Method::scl};
  const auto result = run_sweep(c);
  CHECK(result.failures() == 0);
  CHECK(result.rows.back().axis == 80.0);
  CHECK(std::abs(*result.rows.back().exact - *result.rows.back().scl) < 1e-9);
}

TEST_CASE("sweeps are reproducible") {
  SweepConfig c = fringe_config(300);
  c.adaptive = true;
  c.depth = 5;
  const auto a = run_sweep(c);
  const auto b = run_sweep(c);
  CHECK(a.rows == b.rows);
  CHECK(csv_text(a) == csv_text(b));
}

TEST_CASE("adaptive refinement") {
  SweepConfig c = fringe_config(200);
  const auto plain = run_sweep(c);
  c.adaptive = true;
  const auto refined = run_sweep(c);
  CHECK(refined.rows.size() > plain.rows.size());

  for (std::size_t i = 1; i < refined.rows.size(); ++i)
    REQUIRE(refined.rows[i].axis > refined.rows[i - 1].axis);

  // original grid points keep their values
  std::size_t matched = 0;
  for (const auto& row : refined.rows) {
    const auto it = std::find_if(plain.rows.begin(), plain.rows.end(),
                                 [&](const SweepRow& p) { return p.axis == row.axis; });
    if (it != plain.rows.end()) {
      CHECK(*it == row);
      ++matched;
    }
  }
  CHECK(matched == plain.rows.size());

  // no interval is split more than `depth` times
  const double step = (c.max - c.min) / (c.points - 1);
  double smallest = INFINITY;
  for (std::size_t i = 1; i < refined.rows.size(); ++i)
    smallest = std::min(smallest, refined.rows[i].axis - refined.rows[i - 1].axis);
  CHECK(smallest >= step / std::pow(2.0, kMaxRefinementDepth) * (1.0 - 1e-9));

  c.depth = 0;
  CHECK(run_sweep(c).rows.size() == plain.rows.size());
}

TEST_CASE("csv layout") {
  SweepConfig c = fringe_config(3);
  const auto text = csv_text(run_sweep(c));
  CHECK(text.rfind("axis,p12_exact,p12_scl,p12_direct,p12_ultracold,flux_residual,oracle_residual\n",
                   0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  // first row sits on the cutoff: exact/direct are 0, no residual, ultracold absent
  const auto first_row = text.substr(text.find('\n') + 1, text.find('\n', text.find('\n') + 1) -
                                                             text.find('\n') - 1);
  CHECK(first_row.rfind("-0.5,0,", 0) == 0);
  CHECK(std::count(first_row.begin(), first_row.end(), ',') == 6);

  c.methods.push_back(Method::series);
  const auto with_series = csv_text(run_sweep(c));
  CHECK(with_series.substr(0, with_series.find('\n')).ends_with(",p12_series"));
}

TEST_CASE("csv round trip is lossless") {
  SweepConfig c = ultracold_config(200);
  c.methods = {kAllMethods.begin(), kAllMethods.end()};
  c.verify = true;
  c.verify_slices = 1;
  const auto result = run_sweep(c);
  std::istringstream in(csv_text(result));
  const auto parsed = read_csv(in);
  CHECK(parsed == result.rows);

  std::istringstream header_only("axis,p12_exact\n");
  CHECK_THROWS_AS(read_csv(header_only), ConfigError);
  std::istringstream bad_number(
      "axis,p12_exact,p12_scl,p12_direct,p12_ultracold,flux_residual,oracle_residual\n1,x,,,,,\n");
  CHECK_THROWS_AS(read_csv(bad_number), ConfigError);
}

TEST_CASE("peak finder on synthetic data") {
  std::vector<double> x, y;
  for (int i = 0; i <= 100; ++i) {
    x.push_back(i * 0.1);
    y.push_back(i * 0.01);
  }
  CHECK(find_peaks(x, y).peaks.empty());
  CHECK(find_peaks(std::span(x).first(2), std::span(y).first(2)).peaks.empty());

  // Lorentzian, centre between grid points
  const double centre = 4.537, gamma = 0.3, step = 0.05;
  x.clear();
  y.clear();
  for (int i = 0; i <= 200; ++i) {
    x.push_back(i * step);
    y.push_back(1.0 / (1.0 + std::pow((x.back() - centre) / gamma, 2)));
  }
  const auto report = find_peaks(x, y);
  REQUIRE(report.peaks.size() == 1);
  CHECK(std::abs(report.peaks[0].position - centre) < step);
  CHECK(report.peaks[0].height == doctest::Approx(1.0).epsilon(0.01));
  CHECK(report.peaks[0].fwhm == doctest::Approx(2.0 * gamma).epsilon(0.02));
  CHECK(!report.peaks[0].nearest_n);
}

TEST_CASE("peak report invariants and floor") {
  const auto result = run_sweep(ultracold_config(3000));
  const auto report = find_peaks(result, Method::exact);
  REQUIRE(!report.peaks.empty());
  for (std::size_t i = 0; i < report.peaks.size(); ++i) {
    CHECK(report.peaks[i].fwhm > 0.0);
    CHECK(report.peaks[i].nearest_n);
    if (i) CHECK(report.peaks[i].position > report.peaks[i - 1].position);
  }
  const auto tall = find_peaks(result, Method::exact, 0.5);
  CHECK(tall.peaks.size() <= report.peaks.size());
  for (const auto& p : tall.peaks) CHECK(p.height >= 0.5 * 0.15);
}

TEST_CASE("ultracold peaks sit near the gap resonances") {
  const auto result = run_sweep(ultracold_config(3000));
  const auto report = find_peaks(result, Method::exact);
  REQUIRE(report.peaks.size() >= 2);
  const auto& first = report.peaks.front();
  const double pi = std::numbers::pi;
  // independent evaluation of the nearest estimate
  double best = INFINITY;
  for (int n = 1; n <= 10; ++n)
    best = std::min(best, std::abs(first.position - 0.5 * (std::pow(n * pi / 25.0, 2) - 0.01)));
  CHECK(std::abs(first.position - first.nearest_delta_n) == doctest::Approx(best));
  CHECK(std::abs(first.relative_offset) < 0.25);
}

TEST_CASE("method comparison") {
  const auto result = run_sweep(fringe_config(1500));
  const auto same = compare_methods(result, Method::exact, Method::exact);
  CHECK(same.rms == 0.0);
  CHECK(same.max_abs == 0.0);
  CHECK(same.correlation == doctest::Approx(1.0));
  CHECK(same.count == result.rows.size());

  const auto direct = compare_methods(result, Method::exact, Method::direct);
  CHECK(direct.rms < 0.02);
  const auto far = [](double d) { return std::abs(d) >= 1.0; };
  CHECK(compare_methods(result, Method::exact, Method::scl, far).rms > direct.rms);
  CHECK(compare_methods(result, Method::exact, Method::scl, far).count < result.rows.size());

  CHECK_THROWS_AS(compare_methods(result, Method::exact, Method::ultracold), ConfigError);
}
