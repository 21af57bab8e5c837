#pragma once

// Analytic formulas built on single-zone data: the semiclassical Ramsey
// fringe, the multiple-scattering composition of two zones, and its
// direct-scattering (fast atom) and Fabry-Perot (ultracold atom) limits.
//
// Every function taking two ScatteringSets expects `first` for the zone at
// [0, l] and `second` for the zone at [l + L, 2l + L], computed for the same
// (k, omega, delta, l).

#include <array>
#include <vector>

#include "ramsey/barrier.hpp"
#include "ramsey/core.hpp"

namespace ramsey {

/// Which length enters the second sine of the semiclassical bracket.
enum class SemiclassicalPhase {
  width,  // sin(delta l / 2k): default form
  gap,    // sin(delta L / 2k): alternative kept for comparison runs
};

/// Textbook Ramsey fringe for a classical trajectory crossing both zones,
///   4 Omega^2/Omega'^2 sin^2(Omega' l / 2k)
///     [cos(delta L / 2k) cos(Omega' l / 2k)
///      - (delta/Omega') sin(delta x / 2k) sin(Omega' l / 2k)]^2
/// with x = l or L per `phase`.  Zero when omega = 0.
double p12_semiclassical(const PhysicalParams& params,
                         SemiclassicalPhase phase = SemiclassicalPhase::width);

/// Exact double-zone T12 composed from the two single-zone amplitude sets:
/// the (2,1) element of t~ (1 - r^r r~)^-1 t written out in components.
/// Throws SingularSystem if the multiple-reflection determinant vanishes.
Complex t12_composed(const ScatteringSet& first, const ScatteringSet& second);

/// The two direct paths t11 t~12 + t12 t~22.
Complex direct_terms(const ScatteringSet& first, const ScatteringSet& second);

/// Direct paths plus every path with exactly two internal reflections.
Complex direct_first_order(const ScatteringSet& first, const ScatteringSet& second);

/// Two-path interference (q/k)|t12|^2 |t22 + t11 e^{i(k-q)(l+L)}|^2; 0 below cutoff.
double p12_direct(const PhysicalParams& params);
double p12_direct(const ScatteringSet& first, const PhysicalParams& params);

/// The four leading terms of the small-amplitude expansion of T12: two of
/// second order (Fabry-Perot families) followed by two of third order (one
/// internal excitation by reflection).  Throws on a vanishing denominator.
std::array<Complex, 4> ultracold_series_terms(const ScatteringSet& first,
                                              const ScatteringSet& second);

/// (q/k)|sum of ultracold_series_terms|^2; 0 below cutoff.
double p12_series(const PhysicalParams& params);
double p12_series(const ScatteringSet& first, const ScatteringSet& second,
                  const PhysicalParams& params);

/// The two Fabry-Perot amplitudes
///   t12 t22 / (1 - r22^2 e^{2iqL}),  t11 t12 e^{i(k-q)(l+L)} / (1 - r11^2 e^{2ikL})
/// built from first-zone left-incidence data.
std::array<Complex, 2> ultracold_fabry_perot_terms(const PhysicalParams& params);
std::array<Complex, 2> ultracold_fabry_perot_terms(const ScatteringSet& first,
                                                   const PhysicalParams& params);

/// (q/k)|sum of the Fabry-Perot terms|^2; 0 below cutoff.
double p12_ultracold(const PhysicalParams& params);
double p12_ultracold(const ScatteringSet& first, const PhysicalParams& params);

struct ResonanceEstimate {
  int n = 0;
  double delta_n = 0.0;
};

/// delta_n = [(n pi / L)^2 - k^2] / 2 for n = 1..n_max, skipping any n with
/// k = n pi / L (to 1e-12 relative).
std::vector<ResonanceEstimate> resonance_estimates(double k, double gap, int n_max);

struct CrossingTimes {
  double semiclassical = 0.0;  // L / k
  double effective = 0.0;      // L / q
};

/// Throws InvalidParameters when the excited channel is closed.
CrossingTimes crossing_times(const PhysicalParams& params);

}  // namespace ramsey
