#include "ramsey/approx.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ramsey/errors.hpp"

namespace ramsey {
namespace {

// One-based accessors so the formulas below read like the usual t^l_ij,
// r^r_ij (first zone) and t~^l_ij, r~^l_ij (second zone) labels.
struct Labels {
  const ScatteringSet& a;
  const ScatteringSet& b;
  Complex t(int i, int j) const { return a.t_left[i - 1][j - 1]; }
  Complex rr(int i, int j) const { return a.r_right[i - 1][j - 1]; }
  Complex tt(int i, int j) const { return b.t_left[i - 1][j - 1]; }
  Complex rt(int i, int j) const { return b.r_left[i - 1][j - 1]; }
};

void require_nonzero(Complex denom, const char* what) {
  if (!(std::abs(denom) > 0.0) || !std::isfinite(std::abs(denom))) {
    std::ostringstream msg;
    msg << what << " vanishes (|d|=" << std::abs(denom) << ")";
    throw SingularSystem(msg.str(), std::abs(denom));
  }
}

double excited_speed(const PhysicalParams& p) { return std::sqrt(p.k * p.k + 2.0 * p.delta); }

ScatteringSet first_zone(const PhysicalParams& params) {
  return scattering_from_alpha(alpha_from_matrices(0.0, params));
}

}  // namespace

double p12_semiclassical(const PhysicalParams& params, SemiclassicalPhase phase) {
  params.validate();
  const double omega = params.omega;
  if (omega == 0.0) return 0.0;
  const double k = params.k;
  const double delta = params.delta;
  const double oe = effective_rabi(omega, delta);
  const double pulse = oe * params.width / (2.0 * k);
  const double drift = delta * params.gap / (2.0 * k);
  const double second_len = phase == SemiclassicalPhase::width ? params.width : params.gap;
  const double bracket = std::cos(drift) * std::cos(pulse) -
                         delta / oe * std::sin(delta * second_len / (2.0 * k)) * std::sin(pulse);
  const double s = std::sin(pulse);
  return 4.0 * omega * omega / (oe * oe) * s * s * bracket * bracket;
}

Complex t12_composed(const ScatteringSet& first, const ScatteringSet& second) {
  const Labels x{first, second};
  const Complex numer =
      x.t(1, 2) * x.tt(2, 2) + x.t(1, 1) * x.tt(1, 2) -
      (x.rr(1, 2) * x.t(1, 1) - x.rr(1, 1) * x.t(1, 2)) *
          (x.rt(2, 1) * x.tt(1, 2) - x.rt(1, 1) * x.tt(2, 2)) -
      (x.rr(2, 2) * x.t(1, 1) - x.rr(2, 1) * x.t(1, 2)) *
          (x.rt(2, 2) * x.tt(1, 2) - x.rt(1, 2) * x.tt(2, 2));
  const Complex denom =
      1.0 - x.rr(1, 2) * x.rt(2, 1) - x.rr(2, 2) * x.rt(2, 2) - x.rr(1, 1) * x.rt(1, 1) -
      x.rr(2, 1) * x.rt(1, 2) -
      (x.rr(1, 2) * x.rr(2, 1) - x.rr(2, 2) * x.rr(1, 1)) *
          (x.rt(1, 1) * x.rt(2, 2) - x.rt(2, 1) * x.rt(1, 2));
  require_nonzero(denom, "multiple-reflection determinant");
  return numer / denom;
}

Complex direct_terms(const ScatteringSet& first, const ScatteringSet& second) {
  const Labels x{first, second};
  return x.t(1, 1) * x.tt(1, 2) + x.t(1, 2) * x.tt(2, 2);
}

Complex direct_first_order(const ScatteringSet& first, const ScatteringSet& second) {
  const Labels x{first, second};
  const Complex two_reflections =
      x.t(1, 2) * (x.rt(2, 1) * x.rr(1, 1) + x.rt(2, 2) * x.rr(2, 1)) * x.tt(1, 2) +
      x.t(1, 1) * (x.rt(1, 1) * x.rr(1, 2) + x.rt(1, 2) * x.rr(2, 2)) * x.tt(2, 2) +
      x.t(1, 2) * (x.rt(2, 1) * x.rr(1, 2) + x.rt(2, 2) * x.rr(2, 2)) * x.tt(2, 2) +
      x.t(1, 1) * (x.rt(1, 1) * x.rr(1, 1) + x.rt(1, 2) * x.rr(2, 1)) * x.tt(1, 2);
  return direct_terms(first, second) + two_reflections;
}

double p12_direct(const PhysicalParams& params) {
  params.validate();
  if (!params.excited_channel_open()) return 0.0;
  return p12_direct(first_zone(params), params);
}

double p12_direct(const ScatteringSet& s, const PhysicalParams& params) {
  if (!params.excited_channel_open()) return 0.0;
  const double k = params.k;
  const double q = excited_speed(params);
  const Complex path_phase = std::exp(Complex(0.0, (k - q) * (params.width + params.gap)));
  const Complex paths = s.t_left[1][1] + s.t_left[0][0] * path_phase;
  return q / k * std::norm(s.t_left[0][1]) * std::norm(paths);
}

std::array<Complex, 4> ultracold_series_terms(const ScatteringSet& first,
                                              const ScatteringSet& second) {
  const Labels x{first, second};
  const Complex d22 = 1.0 - x.rr(2, 2) * x.rt(2, 2);
  const Complex d11 = 1.0 - x.rr(1, 1) * x.rt(1, 1);
  require_nonzero(d22, "excited-channel Fabry-Perot denominator");
  require_nonzero(d11, "ground-channel Fabry-Perot denominator");
  const Complex both = d11 * d22;
  return {
      x.t(1, 2) * x.tt(2, 2) / d22,
      x.t(1, 1) * x.tt(1, 2) / d11,
      x.t(1, 1) * x.tt(2, 2) * (x.rr(1, 2) * x.rt(1, 1) + x.rr(2, 2) * x.rt(1, 2)) / both,
      x.t(1, 2) * x.tt(1, 2) * (x.rr(1, 1) * x.rt(2, 1) + x.rr(2, 1) * x.rt(2, 2)) / both,
  };
}

double p12_series(const PhysicalParams& params) {
  params.validate();
  if (!params.excited_channel_open()) return 0.0;
  const BarrierPair pair = single_barrier_pair(params);
  return p12_series(pair.first, pair.second, params);
}

double p12_series(const ScatteringSet& first, const ScatteringSet& second,
                  const PhysicalParams& params) {
  if (!params.excited_channel_open()) return 0.0;
  const auto terms = ultracold_series_terms(first, second);
  const Complex sum = terms[0] + terms[1] + terms[2] + terms[3];
  return excited_speed(params) / params.k * std::norm(sum);
}

std::array<Complex, 2> ultracold_fabry_perot_terms(const PhysicalParams& params) {
  params.validate();
  return ultracold_fabry_perot_terms(first_zone(params), params);
}

std::array<Complex, 2> ultracold_fabry_perot_terms(const ScatteringSet& s,
                                                   const PhysicalParams& params) {
  const ChannelKinematics kin = channel_kinematics(params);
  const Complex i(0.0, 1.0);
  const double k = params.k;
  const double gap = params.gap;
  const Complex r11 = s.r_left[0][0];
  const Complex r22 = s.r_left[1][1];
  const Complex d22 = 1.0 - r22 * r22 * std::exp(2.0 * i * kin.q * gap);
  const Complex d11 = 1.0 - r11 * r11 * std::exp(2.0 * i * k * gap);
  require_nonzero(d22, "excited-channel Fabry-Perot denominator");
  require_nonzero(d11, "ground-channel Fabry-Perot denominator");
  const Complex path_phase = std::exp(i * (k - kin.q) * (params.width + gap));
  return {
      s.t_left[0][1] * s.t_left[1][1] / d22,
      s.t_left[0][0] * s.t_left[0][1] * path_phase / d11,
  };
}

double p12_ultracold(const PhysicalParams& params) {
  params.validate();
  if (!params.excited_channel_open()) return 0.0;
  return p12_ultracold(first_zone(params), params);
}

double p12_ultracold(const ScatteringSet& first, const PhysicalParams& params) {
  if (!params.excited_channel_open()) return 0.0;
  const auto terms = ultracold_fabry_perot_terms(first, params);
  return excited_speed(params) / params.k * std::norm(terms[0] + terms[1]);
}

std::vector<ResonanceEstimate> resonance_estimates(double k, double gap, int n_max) {
  if (!(k > 0) || !(gap > 0) || n_max < 1)
    throw InvalidParameters("resonance estimates need k > 0, L > 0, n_max >= 1");
  std::vector<ResonanceEstimate> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const double kn = n * std::numbers::pi / gap;
    if (std::abs(kn - k) <= 1e-12 * k) continue;
    out.push_back({n, 0.5 * (kn * kn - k * k)});
  }
  return out;
}

CrossingTimes crossing_times(const PhysicalParams& params) {
  params.validate();
  if (!params.excited_channel_open())
    throw InvalidParameters("crossing time undefined for closed excited channel: " +
                            params.describe());
  return {params.gap / params.k, params.gap / excited_speed(params)};
}

}  // namespace ramsey
