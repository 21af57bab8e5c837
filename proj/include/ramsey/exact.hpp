#pragma once

// Exact double-zone solution of v0 = alpha * alpha~ * v4, solved as one
// stacked system with the gap coefficients as extra unknowns so that
// evanescent channels across a long gap keep their precision.

#include "ramsey/barrier.hpp"
#include "ramsey/core.hpp"

namespace ramsey {

/// Ground-state incidence from the left: R11, R12 multiply exp(-ikx),
/// exp(-iqx) for x < 0; T11, T12 multiply exp(ikx), exp(iqx) for
/// x > 2l + L.  `residual` is ||S x - b|| / max(1, ||S|| ||x||) for the
/// stacked system S x = b.
struct DoubleBarrierAmplitudes {
  Complex t11;
  Complex t12;
  Complex r11;
  Complex r12;
  double residual = 0.0;
};

/// Residual above which a solve is refused.
inline constexpr double kMaxSolveResidual = 1e-6;

DoubleBarrierAmplitudes double_barrier_solve(const PhysicalParams& params);

/// Same solve from precomputed zone products (first at 0, second at l + L).
DoubleBarrierAmplitudes double_barrier_solve(const AlphaMatrix& first, const AlphaMatrix& second);

/// |k(|T11|^2 + |R11|^2) + q(|T12|^2 + |R12|^2) - k| / k over the open
/// channels; the excited terms are dropped when q is not real.
double flux_residual(const DoubleBarrierAmplitudes& amps, const PhysicalParams& params);

/// Excited-state transmission probability (q/k)|T12|^2; exactly 0 for
/// delta <= delta_cr.
double p12_exact(const PhysicalParams& params);

/// (q/k)|t12|^2 for already-solved amplitudes, honouring the cutoff.
double p12_from_amplitude(Complex t12, const PhysicalParams& params);

}  // namespace ramsey
