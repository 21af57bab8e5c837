#pragma once

// Row- and column-equilibrated LU in binary128 for the small matching
// systems.  Columns of evanescent waves scale like exp(+-|kappa| x), which
// says nothing about how well posed the matching problem is; scaling both
// ways first keeps the pivot-ratio test meaningful.

#include <algorithm>
#include <array>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "ramsey/errors.hpp"
#include "ramsey/numeric.hpp"

namespace ramsey::detail {

// max(|re|, |im|): within sqrt(2) of the modulus, which is all scaling and
// pivoting need, and far cheaper than a binary128 hypot.
inline Quad magnitude(const QuadComplex& z) {
  const Quad re = fabs(z.real());
  const Quad im = fabs(z.imag());
  return re > im ? re : im;
}

}  // namespace ramsey::detail

template <>
struct Eigen::internal::scalar_score_coeff_op<ramsey::QuadComplex> {
  using result_type = ramsey::Quad;
  ramsey::Quad operator()(const ramsey::QuadComplex& z) const { return ramsey::detail::magnitude(z); }
};

template <>
struct Eigen::internal::functor_traits<Eigen::internal::scalar_score_coeff_op<ramsey::QuadComplex>> {
  enum { Cost = 4 * NumTraits<ramsey::Quad>::MulCost, PacketAccess = false };
};

namespace ramsey::detail {

// Reciprocal condition proxy min|U_ii| / max|U_ii|.  (Eigen's rcond() needs
// NumTraits<Quad>::infinity(), which the Boost bindings do not provide.)
template <class Lu>
double pivot_ratio(const Lu& lu) {
  const auto& packed = lu.matrixLU();
  Quad lo = magnitude(packed(0, 0));
  Quad hi = lo;
  for (int i = 1; i < packed.rows(); ++i) {
    const Quad v = magnitude(packed(i, i));
    lo = v < lo ? v : lo;
    hi = v > hi ? v : hi;
  }
  return hi > 0 ? static_cast<double>(lo / hi) : 0.0;
}

inline constexpr double kQuadSingularRcond = 1e-32;

template <int N>
class EquilibratedLu {
 public:
  using Matrix = Eigen::Matrix<QuadComplex, N, N>;

  /// Throws SingularSystem (message prefixed by `what`) when the scaled
  /// pivot ratio falls below kQuadSingularRcond.
  EquilibratedLu(const Matrix& m, const std::string& what) {
    Matrix scaled = m;
    for (int r = 0; r < N; ++r) {
      row_[r] = inverse_peak(scaled.row(r));
      for (int c = 0; c < N; ++c) scale(scaled(r, c), row_[r]);
    }
    for (int c = 0; c < N; ++c) {
      col_[c] = inverse_peak(scaled.col(c));
      for (int r = 0; r < N; ++r) scale(scaled(r, c), col_[c]);
    }
    lu_.compute(scaled);
    rcond_ = pivot_ratio(lu_);
    if (!(rcond_ > kQuadSingularRcond)) {
      std::ostringstream msg;
      msg << what << " (rcond=" << rcond_ << ")";
      throw SingularSystem(msg.str(), rcond_);
    }
  }

  template <class Rhs>
  Eigen::Matrix<QuadComplex, N, Rhs::ColsAtCompileTime> solve(const Rhs& rhs) const {
    Eigen::Matrix<QuadComplex, N, Rhs::ColsAtCompileTime> b = rhs;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < b.cols(); ++c) scale(b(r, c), row_[r]);
    Eigen::Matrix<QuadComplex, N, Rhs::ColsAtCompileTime> x = lu_.solve(b);
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < x.cols(); ++c) scale(x(r, c), col_[r]);
    return x;
  }

  double rcond() const { return rcond_; }

 private:
  // Power of two near 1/max, so scaling is exact.
  template <class Vec>
  static Quad inverse_peak(const Vec& v) {
    Quad hi(0);
    for (int i = 0; i < v.size(); ++i) hi = std::max(hi, magnitude(v(i)));
    if (!(hi > 0) || !isfinite(hi)) return Quad(1);
    int e = 0;
    frexp(hi, &e);
    return ldexp(Quad(1), -e);
  }

  static void scale(QuadComplex& z, const Quad& s) { z = QuadComplex(z.real() * s, z.imag() * s); }

  Eigen::PartialPivLU<Matrix> lu_;
  std::array<Quad, N> row_{};
  std::array<Quad, N> col_{};
  double rcond_ = 0.0;
};

}  // namespace ramsey::detail
