#pragma once

// Dimensionless problem parameters and the spectral data derived from them.
// Units: hbar = m = 1 throughout, energies E = k^2 / 2.

#include <string>

#include "ramsey/numeric.hpp"

namespace ramsey {

/// One scattering problem: an atom with wavenumber `k` in the ground state
/// hits two laser zones [0, width] and [width + gap, 2 width + gap] with Rabi
/// frequency `omega` and detuning `delta`.
struct PhysicalParams {
  double k = 1.0;
  double omega = 0.0;
  double delta = 0.0;
  double width = 1.0;  // l
  double gap = 0.0;    // L

  /// Throws InvalidParameters unless k > 0, omega >= 0, width > 0, gap >= 0
  /// and all values are finite.
  void validate() const;

  double second_barrier_start() const { return width + gap; }
  double critical_detuning() const { return -0.5 * k * k; }
  /// True when the excited outgoing channel propagates (delta > delta_cr).
  bool excited_channel_open() const { return delta > critical_detuning(); }

  std::string describe() const;
};

struct DressedEigenvalues {
  double plus = 0.0;
  double minus = 0.0;
};

double effective_rabi(double omega, double delta);

/// lambda_{+-} = (-delta +- Omega') / 2, evaluated without cancellation:
/// the larger-magnitude root directly, the other from the product -Omega^2/4.
DressedEigenvalues dressed_eigenvalues(double omega, double delta);

template <class Real>
struct BasicKinematics {
  Real k{};
  Real omega{};
  Real delta{};
  Real omega_eff{};
  Real lambda_plus{};
  Real lambda_minus{};
  ComplexT<Real> q{};        // excited-channel wavenumber, sqrt(k^2 + 2 delta)
  ComplexT<Real> k_plus{};   // sqrt(k^2 - 2 lambda_+)
  ComplexT<Real> k_minus{};  // sqrt(k^2 - 2 lambda_-)
  Real delta_cr{};
};

using ChannelKinematics = BasicKinematics<double>;

/// Kinematics in the requested working precision.  Eigenvalues are computed
/// in double (see dressed_eigenvalues) and the wavenumbers re-derived from
/// them in `Real`, so both precisions describe the same problem.
template <class Real>
BasicKinematics<Real> make_kinematics(const PhysicalParams& params) {
  const DressedEigenvalues lambdas = dressed_eigenvalues(params.omega, params.delta);
  BasicKinematics<Real> kin;
  kin.k = Real(params.k);
  kin.omega = Real(params.omega);
  kin.delta = Real(params.delta);
  kin.omega_eff = Real(effective_rabi(params.omega, params.delta));
  kin.lambda_plus = Real(lambdas.plus);
  kin.lambda_minus = Real(lambdas.minus);
  const Real k2 = kin.k * kin.k;
  kin.q = decaying_root<Real>(k2 + 2 * kin.delta);
  kin.k_plus = decaying_root<Real>(k2 - 2 * kin.lambda_plus);
  kin.k_minus = decaying_root<Real>(k2 - 2 * kin.lambda_minus);
  kin.delta_cr = -k2 / 2;
  return kin;
}

ChannelKinematics channel_kinematics(const PhysicalParams& params);

}  // namespace ramsey
