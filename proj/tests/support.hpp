#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "ramsey/core.hpp"

namespace fixtures {

inline ramsey::PhysicalParams fringe(double delta = 0.0) {
  return {1.0, std::numbers::pi / 20.0, delta, 1.0, 25.0};
}

inline ramsey::PhysicalParams ultracold(double delta = 0.0) {
  return {0.1, 15.0 * std::numbers::pi, delta, 1.2, 25.0};
}

// Parameter sets drawn from the ranges used by the flux and exactness
// properties: k in [0.05, 10], omega in [0, 50], delta in
// [delta_cr + 1e-3, 10], l in [0.1, 3], L in [0, 50].
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng_); }

  ramsey::PhysicalParams open() {
    ramsey::PhysicalParams p;
    p.k = uniform(0.05, 10.0);
    p.omega = uniform(0.0, 50.0);
    p.delta = uniform(-0.5 * p.k * p.k + 1e-3, 10.0);
    p.width = uniform(0.1, 3.0);
    p.gap = uniform(0.0, 50.0);
    return p;
  }

  // Same ranges with delta below the cutoff, at most 5 below it.
  ramsey::PhysicalParams closed() {
    ramsey::PhysicalParams p = open();
    p.delta = -0.5 * p.k * p.k - uniform(1e-3, 5.0);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace fixtures
