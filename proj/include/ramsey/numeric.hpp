#pragma once

// Scalar and small fixed-size matrix types shared by all modules.
//
// Transfer-matrix products across an opaque laser zone carry growth factors
// of order exp(|k_+| l) per zone, and the physical amplitudes are recovered
// from cancellations between such entries.  Everything that goes through the
// 4x4 matching products is therefore evaluated in binary128 (Quad), and only
// the final amplitudes are rounded back to double.

#include <complex>

#include <Eigen/Dense>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

namespace ramsey {

using Complex = std::complex<double>;
using Quad = boost::multiprecision::float128;
using QuadComplex = boost::multiprecision::complex128;

template <class Real>
struct ComplexOf {
  using type = std::complex<Real>;
};
template <>
struct ComplexOf<Quad> {
  using type = QuadComplex;
};

template <class Real>
using ComplexT = typename ComplexOf<Real>::type;

template <class Real>
using Matrix4 = Eigen::Matrix<ComplexT<Real>, 4, 4>;
template <class Real>
using Vector4 = Eigen::Matrix<ComplexT<Real>, 4, 1>;

using Matrix4c = Matrix4<double>;
using Vector4c = Vector4<double>;

inline Complex to_double(const Complex& z) { return z; }
inline Complex to_double(const QuadComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
inline double to_double(double x) { return x; }
inline double to_double(const Quad& x) { return static_cast<double>(x); }

template <class Real>
ComplexT<Real> imag_unit() {
  return ComplexT<Real>(Real(0), Real(1));
}

/// Square root of a real wavenumber-squared on the decaying branch: the
/// non-negative real root when `square >= 0`, otherwise i*sqrt(-square).
/// With this choice exp(i*kappa*x) never grows as x -> +infinity.
template <class Real>
ComplexT<Real> decaying_root(const Real& square) {
  using std::sqrt;
  if (square >= 0) return ComplexT<Real>(sqrt(square), Real(0));
  return ComplexT<Real>(Real(0), sqrt(-square));
}

}  // namespace ramsey
