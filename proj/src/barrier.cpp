#include "ramsey/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "quad_lu.hpp"

namespace ramsey {
namespace {

using detail::EquilibratedLu;

std::string located(const char* what, const PhysicalParams& params) {
  return std::string(what) + " is singular at " + params.describe();
}

Complex amp(const QuadComplex& z) { return to_double(z); }

// free_matching(x)^-1 * m.  The free matrix is block diagonal with one 2x2
// plane-wave block per channel, inverted in closed form:
//   A = e^{-ikx} (psi + psi'/(ik)) / 2,   B = e^{ikx} (psi - psi'/(ik)) / 2.
Matrix4<Quad> free_solve(const Quad& x, const BasicKinematics<Quad>& kin, const Matrix4<Quad>& m,
                         const PhysicalParams& params) {
  const QuadComplex i = imag_unit<Quad>();
  const std::array<QuadComplex, 2> wavenumber{QuadComplex(kin.k), kin.q};
  Matrix4<Quad> out;
  for (int ch = 0; ch < 2; ++ch) {
    if (wavenumber[ch] == QuadComplex(0))
      throw SingularSystem(located("free matching matrix", params), 0.0);
    const QuadComplex inv_ik = QuadComplex(1) / (i * wavenumber[ch]);
    const QuadComplex half_in = exp(-i * wavenumber[ch] * x) / 2;
    const QuadComplex half_out = exp(i * wavenumber[ch] * x) / 2;
    for (int c = 0; c < 4; ++c) {
      const QuadComplex slope = m(2 * ch + 1, c) * inv_ik;
      out(2 * ch, c) = half_in * (m(2 * ch, c) + slope);
      out(2 * ch + 1, c) = half_out * (m(2 * ch, c) - slope);
    }
  }
  return out;
}

// dressed_matching(x, origin)^-1 * m.  Rows are unmixed into the dressed
// components f+- (psi_1 = f+ + f-, psi_2 = w+ f+ + w- f-, with w+ w- = -1),
// each of which is then a plane-wave block like the free one.
Matrix4<Quad> dressed_solve(const Quad& x, const Quad& origin, const BasicKinematics<Quad>& kin,
                            const Matrix4<Quad>& m, const PhysicalParams& params) {
  const QuadComplex i = imag_unit<Quad>();
  const std::array<QuadComplex, 2> wavenumber{kin.k_plus, kin.k_minus};
  const Quad w_plus = 2 * kin.lambda_plus / kin.omega;
  const Quad w_minus = 2 * kin.lambda_minus / kin.omega;
  const Quad inv_det = Quad(1) / (w_minus - w_plus);
  const Quad s = x - origin;
  Matrix4<Quad> out;
  for (int d = 0; d < 2; ++d) {
    if (wavenumber[d] == QuadComplex(0))
      throw SingularSystem(located("dressed matching matrix", params), 0.0);
    const QuadComplex inv_ik = QuadComplex(1) / (i * wavenumber[d]);
    const QuadComplex half_in = exp(-i * wavenumber[d] * s) / 2;
    const QuadComplex half_out = exp(i * wavenumber[d] * s) / 2;
    for (int c = 0; c < 4; ++c) {
      // f_+ = (w- psi_1 - psi_2) / (w- - w+),  f_- = (psi_2 - w+ psi_1) / (w- - w+)
      const QuadComplex f = d == 0 ? (m(0, c) * w_minus - m(2, c)) * inv_det
                                   : (m(2, c) - m(0, c) * w_plus) * inv_det;
      const QuadComplex df = d == 0 ? (m(1, c) * w_minus - m(3, c)) * inv_det
                                    : (m(3, c) - m(1, c) * w_plus) * inv_det;
      const QuadComplex slope = df * inv_ik;
      out(2 * d, c) = half_in * (f + slope);
      out(2 * d + 1, c) = half_out * (f - slope);
    }
  }
  return out;
}

}  // namespace

Matrix4c matching_matrix_free(double x, const ChannelKinematics& kin) {
  return free_matching<double>(x, kin);
}

Matrix4c matching_matrix_barrier(double x, const ChannelKinematics& kin) {
  return dressed_matching<double>(x, kin);
}

Matrix4c AlphaMatrix::rounded() const {
  Matrix4c out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = to_double(entries(r, c));
  return out;
}

AlphaMatrix alpha_from_matrices(double barrier_start, const PhysicalParams& params) {
  params.validate();
  AlphaMatrix alpha;
  alpha.barrier_start = barrier_start;
  alpha.params = params;
  if (params.omega == 0.0) {
    alpha.entries = Matrix4<Quad>::Identity();
    return alpha;
  }
  const auto kin = make_kinematics<Quad>(params);
  const Quad start(barrier_start);
  const Quad end = start + Quad(params.width);

  const Matrix4<Quad> inner = dressed_solve(end, start, kin, free_matching<Quad>(end, kin), params);
  alpha.entries = free_solve(start, kin, dressed_matching<Quad>(start, kin, start) * inner, params);
  return alpha;
}

Complex closed_form_sigma(int sign, Complex k1, Complex k2, const ChannelKinematics& kin) {
  const Complex kpm = sign > 0 ? kin.k_plus : kin.k_minus;
  return Complex(0.0, 0.5) * (k1 / kpm + kpm / k2);
}

Complex closed_form_d(int sign, Complex k1, Complex k2, const ChannelKinematics& kin,
                      double width) {
  const Complex kpm = sign > 0 ? kin.k_plus : kin.k_minus;
  return std::cos(kpm * width) - closed_form_sigma(sign, k1, k2, kin) * std::sin(kpm * width);
}

AlphaClosedForm alpha_closed_form(const PhysicalParams& params) {
  params.validate();
  if (params.omega == 0.0) throw DegenerateBasis("closed-form alpha requires omega > 0");
  const ChannelKinematics kin = channel_kinematics(params);
  const double l = params.width;
  const Complex i(0.0, 1.0);
  const Complex k(kin.k, 0.0);
  const Complex q = kin.q;
  const double lp = kin.lambda_plus;
  const double lm = kin.lambda_minus;
  const double om = kin.omega;
  const double oe = kin.omega_eff;

  auto d = [&](int s, Complex a, Complex b) { return closed_form_d(s, a, b, kin, l); };
  auto sigma = [&](int s, Complex a, Complex b) { return closed_form_sigma(s, a, b, kin); };
  auto sin_l = [&](int s) { return std::sin((s > 0 ? kin.k_plus : kin.k_minus) * l); };

  // Off-diagonal pattern shared by alpha_31, alpha_13, alpha_41, alpha_23:
  // (Omega/4) e^{i a l} [d+(a,b) - d-(a,b) + (a/b)(d+(b,a) - d-(b,a))] / Omega'
  // where the exponent carries the unsigned wavenumber `phase_k`.
  auto coupling = [&](Complex phase_k, Complex a, Complex b) {
    return 0.25 * om * std::exp(i * phase_k * l) *
           (d(1, a, b) - d(-1, a, b) + (a / b) * (d(1, b, a) - d(-1, b, a))) / oe;
  };

  AlphaClosedForm out;
  out.a11 = std::exp(i * k * l) * (lp * d(-1, k, k) - lm * d(1, k, k)) / oe;
  // For the excited channel the dressed labels swap roles: its weights
  // 2 lambda_pm / Omega multiply to -1.
  out.a33 = std::exp(i * q * l) * (lp * d(1, q, q) - lm * d(-1, q, q)) / oe;
  out.a31 = coupling(k, k, q);
  out.a13 = coupling(q, q, k);
  out.a41 = coupling(k, k, -q);
  out.a23 = coupling(q, q, -k);
  out.a21 = std::exp(i * k * l) *
            (lm * sigma(1, k, -k) * sin_l(1) - lp * sigma(-1, k, -k) * sin_l(-1)) / oe;
  out.a43 = std::exp(i * q * l) *
            (lm * sigma(-1, q, -q) * sin_l(-1) - lp * sigma(1, q, -q) * sin_l(1)) / oe;
  return out;
}

ScatteringSet scattering_from_alpha(const AlphaMatrix& alpha) {
  using QC = QuadComplex;
  const Matrix4<Quad>& a = alpha.entries;
  // Unknown vector u and system S u = rhs, with S = [e2, e4, -alpha e1, -alpha e3]
  // (one-based unit vectors).  Left incidence: u = (r_i1, r_i2, t_i1, t_i2);
  // right incidence: u = (t_i1, t_i2, r_i1, r_i2).
  Matrix4<Quad> system = Matrix4<Quad>::Zero();
  system(1, 0) = QC(1);
  system(3, 1) = QC(1);
  system.col(2) = -a.col(0);
  system.col(3) = -a.col(2);

  Matrix4<Quad> rhs = Matrix4<Quad>::Zero();
  rhs(0, 0) = QC(-1);    // left, channel 1: incident A+ = 1
  rhs(2, 1) = QC(-1);    // left, channel 2: incident A- = 1
  rhs.col(2) = a.col(1);  // right, channel 1: incident B+ = 1
  rhs.col(3) = a.col(3);  // right, channel 2: incident B- = 1

  std::ostringstream where;
  where << "d_alpha vanishes at " << alpha.params.describe()
        << " barrier_start=" << alpha.barrier_start;
  const EquilibratedLu<4> lu(system, where.str());
  const Matrix4<Quad> u = lu.solve(rhs);

  ScatteringSet set;
  for (int ch = 0; ch < 2; ++ch) {
    set.r_left[ch] = {amp(u(0, ch)), amp(u(1, ch))};
    set.t_left[ch] = {amp(u(2, ch)), amp(u(3, ch))};
    set.t_right[ch] = {amp(u(0, 2 + ch)), amp(u(1, 2 + ch))};
    set.r_right[ch] = {amp(u(2, 2 + ch)), amp(u(3, 2 + ch))};
  }
  return set;
}

AlphaAmplitudes amplitudes_from_alpha_entries(const AlphaMatrix& alpha) {
  const Matrix4<Quad>& a = alpha.entries;
  const QuadComplex d = a(0, 2) * a(2, 0) - a(0, 0) * a(2, 2);
  AlphaAmplitudes out;
  out.d_alpha = to_double(d);
  out.t11 = to_double(QuadComplex(-a(2, 2) / d));
  out.t12 = to_double(QuadComplex(a(2, 0) / d));
  out.t22 = to_double(QuadComplex(-a(0, 0) / d));
  out.r11 = to_double(QuadComplex((a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d));
  out.r22 = to_double(QuadComplex((a(3, 0) * a(0, 2) - a(3, 2) * a(0, 0)) / d));
  return out;
}

BarrierPair single_barrier_pair(const PhysicalParams& params) {
  BarrierPair pair;
  pair.first_alpha = alpha_from_matrices(0.0, params);
  pair.second_alpha = alpha_from_matrices(params.second_barrier_start(), params);
  pair.first = scattering_from_alpha(pair.first_alpha);
  pair.second = scattering_from_alpha(pair.second_alpha);
  return pair;
}

OneChannelAmplitudes one_channel_amplitudes(double k, double height, double width) {
  if (!(k > 0) || !(width > 0))
    throw InvalidParameters("one-channel amplitudes need k > 0 and width > 0");
  const Complex i(0.0, 1.0);
  const Complex kappa = decaying_root<double>(k * k - 2.0 * height);
  // sin(kappa l) / kappa, continuous through kappa = 0.
  const Complex sinc_l =
      std::abs(kappa) * width < 1e-8 ? Complex(width, 0.0) : std::sin(kappa * width) / kappa;
  const Complex kappa2 = kappa * kappa;
  const Complex denom = std::cos(kappa * width) - i * (k * k + kappa2) * sinc_l / (2.0 * k);
  OneChannelAmplitudes out;
  out.tau = std::exp(-i * k * width) / denom;
  out.rho = i * (kappa2 - k * k) * sinc_l / (2.0 * k) / denom;
  return out;
}

Eigen::MatrixXcd flux_normalized_smatrix(const ScatteringSet& set, const ChannelKinematics& kin) {
  const bool excited_open = kin.q.imag() == 0.0 && kin.q.real() > 0.0;
  const std::array<double, 2> speed{kin.k, kin.q.real()};
  const int channels = excited_open ? 2 : 1;
  const int ports = 2 * channels;
  Eigen::MatrixXcd s(ports, ports);
  // port p: side = p / channels (0 left, 1 right), channel = p % channels
  for (int in = 0; in < ports; ++in) {
    const int in_side = in / channels;
    const int ci = in % channels;
    for (int out = 0; out < ports; ++out) {
      const int out_side = out / channels;
      const int co = out % channels;
      Complex a;
      if (in_side == 0)
        a = out_side == 0 ? set.r_left[ci][co] : set.t_left[ci][co];
      else
        a = out_side == 1 ? set.r_right[ci][co] : set.t_right[ci][co];
      s(out, in) = a * std::sqrt(speed[co] / speed[ci]);
    }
  }
  return s;
}

double unitarity_residual(const Eigen::MatrixXcd& s) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(s.cols(), s.cols());
  return (s.adjoint() * s - id).norm();
}

}  // namespace ramsey
