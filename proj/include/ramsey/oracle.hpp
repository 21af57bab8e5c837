#pragma once

// Independent check of the double-zone solution: the axis [0, 2l + L] is cut
// into thin slices of constant coupling, each slice's 2x2 internal
// Hamiltonian is diagonalised numerically, and the slices are chained with a
// scattering-matrix recursion (one small linear solve per interface, only
// decaying exponentials).  Nothing from the transfer-product path is reused.

#include <span>
#include <vector>

#include "ramsey/core.hpp"
#include "ramsey/exact.hpp"

namespace ramsey {

/// Slice boundaries covering [0, 2l + L].  The zone edges 0, l, l + L and
/// 2l + L are always boundaries; each zone (and a non-empty gap) is split
/// into `slices_per_region` equal slices.
struct SliceGrid {
  int slices_per_region = 1;
  std::vector<double> boundaries;

  static SliceGrid uniform(const PhysicalParams& params, int slices_per_region);
  /// Throws InvalidParameters unless strictly increasing with >= 2 entries.
  void validate() const;
};

DoubleBarrierAmplitudes integrate_sliced(const PhysicalParams& params, const SliceGrid& grid);

/// Largest deviation between two amplitude sets: absolute for T11, R11, R12
/// and relative to max(1, |T12|) for T12 (the excited transmission is
/// referenced to the far interface and can be large when evanescent).
double amplitude_deviation(const DoubleBarrierAmplitudes& a, const DoubleBarrierAmplitudes& b);

struct ConvergenceRow {
  int slices_per_region = 0;
  double residual = 0.0;       // amplitude_deviation vs. the transfer-product solve
  double flux_residual = 0.0;  // of the sliced solution on its own
};

std::vector<ConvergenceRow> convergence_report(const PhysicalParams& params,
                                               std::span<const int> slice_counts);

}  // namespace ramsey
