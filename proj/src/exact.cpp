#include "ramsey/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "quad_lu.hpp"

namespace ramsey {

DoubleBarrierAmplitudes double_barrier_solve(const AlphaMatrix& first, const AlphaMatrix& second) {
  using QC = QuadComplex;
  const auto kin = make_kinematics<Quad>(first.params);
  const QC i = imag_unit<Quad>();
  const std::array<QC, 2> wavenumber{QC(kin.k), kin.q};
  const Quad gap_left = Quad(first.barrier_start) + Quad(first.params.width);
  const Quad a(second.barrier_start);

  // v0 = alpha alpha~ v4 is solved without forming the product: with
  // channels closed, its entries span exp(+-2|q| a) and lose the small
  // components even in binary128.  Instead the gap coefficients g are kept
  // as unknowns, each wave referenced at the gap edge where it is largest
  // (g = D h), and alpha~ = P^-1 inner P with P the plane-wave phases at a.
  //   alpha D h           = v0 = (1, R11, 0, R12)
  //   P D h - inner w     = 0,   w = P v4 = (T11 e^{ika}, 0, T12 e^{iqa}, 0)
  std::array<QC, 4> phase_a, d;
  for (int ch = 0; ch < 2; ++ch) {
    const QC ik = i * wavenumber[ch];
    phase_a[2 * ch] = exp(ik * a);
    phase_a[2 * ch + 1] = exp(-ik * a);
    d[2 * ch] = exp(-ik * gap_left);
    d[2 * ch + 1] = exp(ik * a);
  }
  Matrix4<Quad> inner;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) inner(r, c) = phase_a[r] * second.entries(r, c) / phase_a[c];

  // unknowns: R11, R12, h1..h4, w1, w3
  Eigen::Matrix<QC, 8, 8> system = Eigen::Matrix<QC, 8, 8>::Zero();
  Eigen::Matrix<QC, 8, 1> rhs = Eigen::Matrix<QC, 8, 1>::Zero();
  system(1, 0) = QC(-1);
  system(3, 1) = QC(-1);
  rhs(0) = QC(1);
  for (int r = 0; r < 4; ++r) {
    for (int j = 0; j < 4; ++j) system(r, 2 + j) = first.entries(r, j) * d[j];
    system(4 + r, 2 + r) = phase_a[r] * d[r];
    system(4 + r, 6) = -inner(r, 0);
    system(4 + r, 7) = -inner(r, 2);
  }

  // R11 and R12 appear only in rows 1 and 3 as unit columns, so the other
  // six rows fix (h, w1, w3) on their own and rows 1, 3 then give R.
  constexpr std::array<int, 6> reduced_rows{0, 2, 4, 5, 6, 7};
  Eigen::Matrix<QC, 6, 6> reduced;
  Eigen::Matrix<QC, 6, 1> reduced_rhs;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) reduced(r, c) = system(reduced_rows[r], 2 + c);
    reduced_rhs(r) = rhs(reduced_rows[r]);
  }
  std::ostringstream where;
  where << "double-barrier system is singular at " << first.params.describe();
  const detail::EquilibratedLu<6> lu(reduced, where.str());
  const Eigen::Matrix<QC, 6, 1> y = lu.solve(reduced_rhs);
  Eigen::Matrix<QC, 8, 1> x;
  x.tail<6>() = y;
  x(0) = system.row(1).tail<6>().transpose().cwiseProduct(y).sum();
  x(1) = system.row(3).tail<6>().transpose().cwiseProduct(y).sum();
  const Quad scale = std::max(Quad(1), Quad(system.norm() * x.norm()));
  const double residual = static_cast<double>((system * x - rhs).norm() / scale);

  DoubleBarrierAmplitudes out;
  out.r11 = to_double(x(0));
  out.r12 = to_double(x(1));
  out.t11 = to_double(QC(x(6) / phase_a[0]));
  out.t12 = to_double(QC(x(7) / phase_a[2]));
  out.residual = residual;

  const bool finite = std::isfinite(residual) && std::isfinite(std::abs(out.t11)) &&
                      std::isfinite(std::abs(out.r11)) && std::isfinite(std::abs(out.t12)) &&
                      std::isfinite(std::abs(out.r12));
  if (!finite || residual > kMaxSolveResidual) {
    std::ostringstream msg;
    msg << "double-barrier solve failed (residual=" << residual << ") at "
        << first.params.describe();
    throw SingularSystem(msg.str(), residual);
  }
  return out;
}

DoubleBarrierAmplitudes double_barrier_solve(const PhysicalParams& params) {
  params.validate();
  const AlphaMatrix first = alpha_from_matrices(0.0, params);
  const AlphaMatrix second = alpha_from_matrices(params.second_barrier_start(), params);
  return double_barrier_solve(first, second);
}

double flux_residual(const DoubleBarrierAmplitudes& amps, const PhysicalParams& params) {
  const double k = params.k;
  double outgoing = k * (std::norm(amps.t11) + std::norm(amps.r11));
  if (params.excited_channel_open()) {
    const double q = std::sqrt(k * k + 2.0 * params.delta);
    outgoing += q * (std::norm(amps.t12) + std::norm(amps.r12));
  }
  return std::abs(outgoing - k) / k;
}

double p12_from_amplitude(Complex t12, const PhysicalParams& params) {
  if (!params.excited_channel_open()) return 0.0;
  const double k = params.k;
  const double q = std::sqrt(k * k + 2.0 * params.delta);
  return q / k * std::norm(t12);
}

double p12_exact(const PhysicalParams& params) {
  params.validate();
  if (!params.excited_channel_open()) return 0.0;
  return p12_from_amplitude(double_barrier_solve(params).t12, params);
}

}  // namespace ramsey
