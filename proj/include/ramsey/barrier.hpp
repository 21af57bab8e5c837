#pragma once

// Single laser zone: matching matrices, the 4x4 transfer product alpha, and
// the sixteen single-zone scattering amplitudes.
//
// Coefficient vectors are ordered (A+, B+, A-, B-): right/left-moving waves of
// the ground channel followed by right/left-moving waves of the excited
// channel (or of the +/- dressed states inside a zone).  Matching-matrix rows
// are (psi_1, psi_1', psi_2, psi_2') evaluated at the interface position.
// Plane waves use the global origin, exp(+-i k x), so amplitudes of the
// second zone differ from those of the first only by phase factors.

#include <array>

#include <Eigen/Dense>

#include "ramsey/core.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/numeric.hpp"

namespace ramsey {

/// Plane-wave matching matrix outside the fields.
template <class Real>
Matrix4<Real> free_matching(const Real& x, const BasicKinematics<Real>& kin) {
  const ComplexT<Real> i = imag_unit<Real>();
  const ComplexT<Real> k(kin.k, Real(0));
  const std::array<ComplexT<Real>, 2> wavenumber{k, kin.q};
  Matrix4<Real> m = Matrix4<Real>::Zero();
  for (int channel = 0; channel < 2; ++channel) {
    for (int dir = 0; dir < 2; ++dir) {
      const ComplexT<Real> ik = (dir == 0 ? i : -i) * wavenumber[channel];
      const ComplexT<Real> phase = exp(ik * ComplexT<Real>(x, Real(0)));
      const int col = 2 * channel + dir;
      m(2 * channel, col) = phase;
      m(2 * channel + 1, col) = ik * phase;
    }
  }
  return m;
}

/// Dressed-state matching matrix inside a field zone.  Columns are the waves
/// |lambda_+-> exp(+-i k_+- (x - origin)) with |lambda> = |1> + (2 lambda/Omega)|2>;
/// `origin` only rescales columns and drops out of every transfer product.
template <class Real>
Matrix4<Real> dressed_matching(const Real& x, const BasicKinematics<Real>& kin,
                               const Real& origin = Real(0)) {
  if (kin.omega == 0) throw DegenerateBasis("dressed basis undefined at omega = 0");
  const ComplexT<Real> i = imag_unit<Real>();
  const std::array<ComplexT<Real>, 2> wavenumber{kin.k_plus, kin.k_minus};
  const std::array<Real, 2> weight{2 * kin.lambda_plus / kin.omega,
                                   2 * kin.lambda_minus / kin.omega};
  const ComplexT<Real> offset(x - origin, Real(0));
  Matrix4<Real> m;
  for (int dressed = 0; dressed < 2; ++dressed) {
    for (int dir = 0; dir < 2; ++dir) {
      const ComplexT<Real> ik = (dir == 0 ? i : -i) * wavenumber[dressed];
      const ComplexT<Real> phase = exp(ik * offset);
      const ComplexT<Real> slope = ik * phase;
      const ComplexT<Real> w(weight[dressed], Real(0));
      const int col = 2 * dressed + dir;
      m(0, col) = phase;
      m(1, col) = slope;
      m(2, col) = w * phase;
      m(3, col) = w * slope;
    }
  }
  return m;
}

Matrix4c matching_matrix_free(double x, const ChannelKinematics& kin);
Matrix4c matching_matrix_barrier(double x, const ChannelKinematics& kin);

/// alpha relates the coefficient vectors on both sides of one zone,
/// v_left = alpha * v_right.  Entries are held in binary128.
struct AlphaMatrix {
  Matrix4<Quad> entries;
  double barrier_start = 0.0;
  PhysicalParams params;

  /// Zero-based access rounded to double; alpha_ij of the usual 1-based
  /// labelling is (*this)(i - 1, j - 1).
  Complex operator()(int row, int col) const { return to_double(entries(row, col)); }
  Matrix4c rounded() const;
};

/// alpha = M0(a)^-1 Mb(a) Mb(a + l)^-1 M0(a + l) for a zone starting at
/// `barrier_start`.  At omega = 0 the zone is field-free and alpha = 1.
/// The matching matrices are inverted blockwise in closed form.  Throws
/// SingularSystem when one is singular (q = 0 or k_pm = 0).
AlphaMatrix alpha_from_matrices(double barrier_start, const PhysicalParams& params);

/// Closed-form alpha entries for a zone starting at x = 0.
struct AlphaClosedForm {
  Complex a11, a33, a31, a13, a41, a23, a21, a43;
};

/// d_pm(k1, k2) = cos(k_pm l) - sigma_pm(k1, k2) sin(k_pm l),
/// sigma_pm(k1, k2) = i (k1 / k_pm + k_pm / k2) / 2.
Complex closed_form_d(int sign, Complex k1, Complex k2, const ChannelKinematics& kin,
                      double width);
Complex closed_form_sigma(int sign, Complex k1, Complex k2, const ChannelKinematics& kin);

/// Requires omega > 0 and a propagating or evanescent (nonzero) q.
AlphaClosedForm alpha_closed_form(const PhysicalParams& params);

/// Amplitudes for incidence from the left (`*_left`) or right (`*_right`);
/// index [i][j] = incoming channel i, outgoing channel j (0 = ground).
struct ScatteringSet {
  using Block = std::array<std::array<Complex, 2>, 2>;
  Block t_left{};
  Block t_right{};
  Block r_left{};
  Block r_right{};
};

/// Solves the four one-sided boundary-value problems against alpha
/// (left/right incidence in either channel, nothing incoming from the far
/// side).  Throws SingularSystem when d_alpha vanishes.
ScatteringSet scattering_from_alpha(const AlphaMatrix& alpha);

/// t11, t12, t22, r11, r22 written directly in alpha entries, together with
/// d_alpha = alpha_13 alpha_31 - alpha_11 alpha_33.
struct AlphaAmplitudes {
  Complex d_alpha, t11, t12, t22, r11, r22;
};
AlphaAmplitudes amplitudes_from_alpha_entries(const AlphaMatrix& alpha);

/// Convenience: both zones of the interferometer, starting at 0 and l + L.
struct BarrierPair {
  AlphaMatrix first_alpha;
  AlphaMatrix second_alpha;
  ScatteringSet first;
  ScatteringSet second;
};
BarrierPair single_barrier_pair(const PhysicalParams& params);

/// Transmission/reflection of a single rectangular potential of the given
/// height on [0, width], same global-origin convention.
struct OneChannelAmplitudes {
  Complex tau;
  Complex rho;
};
OneChannelAmplitudes one_channel_amplitudes(double k, double height, double width);

/// Flux-normalised S-matrix over the open ports, ordered (left ch1, left ch2,
/// right ch1, right ch2); the excited ports are dropped when q is not real.
Eigen::MatrixXcd flux_normalized_smatrix(const ScatteringSet& set, const ChannelKinematics& kin);

/// Frobenius norm of S^dagger S - 1.
double unitarity_residual(const Eigen::MatrixXcd& s);

}  // namespace ramsey
