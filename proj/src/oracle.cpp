#include "ramsey/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ramsey/errors.hpp"

namespace ramsey {
namespace {

using Matrix2c = Eigen::Matrix2cd;

// Plane-wave content of one constant-coupling layer: channel-space mode
// vectors (columns of `modes`) and their wavenumbers.
struct Layer {
  Matrix2c modes = Matrix2c::Identity();
  Eigen::Vector2cd wavenumbers;
  double thickness = 0.0;
};

Layer free_layer(const PhysicalParams& p) {
  Layer layer;
  layer.wavenumbers << Complex(p.k, 0.0), decaying_root<double>(p.k * p.k + 2.0 * p.delta);
  return layer;
}

Layer slice_layer(const PhysicalParams& p, double coupling, double thickness) {
  Eigen::Matrix2d potential;
  potential << 0.0, 0.5 * coupling, 0.5 * coupling, -p.delta;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(potential);
  Layer layer;
  layer.modes = eig.eigenvectors().cast<Complex>();
  for (int m = 0; m < 2; ++m)
    layer.wavenumbers(m) = decaying_root<double>(p.k * p.k - 2.0 * eig.eigenvalues()(m));
  layer.thickness = thickness;
  return layer;
}

// Scattering relations accumulated from x = -inf up to the current plane:
//   b_left  = refl * a_left + trans_back * b_here
//   a_here  = trans * a_left + refl_back * b_here
struct Accumulated {
  Matrix2c refl = Matrix2c::Zero();
  Matrix2c trans = Matrix2c::Identity();
  Matrix2c refl_back = Matrix2c::Zero();
  Matrix2c trans_back = Matrix2c::Identity();
};

struct InterfaceBlocks {
  Matrix2c s11, s12, s21, s22;
};

double rcond_floor() { return 1e-14; }

[[noreturn]] void conditioning_failure(const PhysicalParams& p, double x, double rcond) {
  std::ostringstream msg;
  msg << "slice recursion lost conditioning at x=" << x << " (rcond=" << rcond << ") for "
      << p.describe();
  throw SingularSystem(msg.str(), rcond);
}

// Outgoing (b on the left side, a on the right side) from incoming
// (a on the left side, b on the right side), both sides referenced at the
// interface plane.
InterfaceBlocks interface(const Layer& lhs, const Layer& rhs, const PhysicalParams& p, double x,
                          double& worst_residual) {
  const Matrix2c ul = lhs.modes;
  const Matrix2c ur = rhs.modes;
  const Matrix2c ulk = ul * lhs.wavenumbers.asDiagonal();
  const Matrix2c urk = ur * rhs.wavenumbers.asDiagonal();
  Eigen::Matrix4cd g, h;
  g << -ul, ur, ulk, urk;
  h << ul, -ur, ulk, urk;
  const Eigen::PartialPivLU<Eigen::Matrix4cd> lu(g);
  const double rcond = lu.rcond();
  if (!(rcond > rcond_floor())) conditioning_failure(p, x, rcond);
  const Eigen::Matrix4cd s = lu.solve(h);
  worst_residual = std::max(worst_residual, (g * s - h).norm() / std::max(1.0, h.norm()));
  return {s.topLeftCorner<2, 2>(), s.topRightCorner<2, 2>(), s.bottomLeftCorner<2, 2>(),
          s.bottomRightCorner<2, 2>()};
}

void attach(Accumulated& acc, const InterfaceBlocks& s, const PhysicalParams& p, double x) {
  const Matrix2c id = Matrix2c::Identity();
  const Eigen::PartialPivLU<Matrix2c> lu(id - acc.refl_back * s.s11);
  const double rcond = lu.rcond();
  if (!(rcond > rcond_floor())) conditioning_failure(p, x, rcond);
  const Matrix2c x_trans = lu.solve(acc.trans);
  const Matrix2c x_refl = lu.solve(acc.refl_back);
  Accumulated next;
  next.trans = s.s21 * x_trans;
  next.refl_back = s.s21 * x_refl * s.s12 + s.s22;
  next.refl = acc.refl + acc.trans_back * s.s11 * x_trans;
  next.trans_back = acc.trans_back * (id + s.s11 * x_refl) * s.s12;
  acc = next;
}

void propagate(Accumulated& acc, const Layer& layer) {
  Eigen::Vector2cd phase;
  for (int m = 0; m < 2; ++m)
    phase(m) = std::exp(Complex(0.0, 1.0) * layer.wavenumbers(m) * layer.thickness);
  const auto p = phase.asDiagonal();
  acc.trans = p * acc.trans;
  acc.refl_back = p * acc.refl_back * p;
  acc.trans_back = acc.trans_back * p;
}

bool inside_zone(double x, const PhysicalParams& p) {
  const double second = p.second_barrier_start();
  return (x > 0.0 && x < p.width) || (x > second && x < second + p.width);
}

}  // namespace

SliceGrid SliceGrid::uniform(const PhysicalParams& params, int slices_per_region) {
  params.validate();
  if (slices_per_region < 1) throw InvalidParameters("slices_per_region must be >= 1");
  SliceGrid grid;
  grid.slices_per_region = slices_per_region;
  const double l = params.width;
  const double second = params.second_barrier_start();
  std::vector<std::pair<double, double>> regions{{0.0, l}};
  if (params.gap > 0.0) regions.emplace_back(l, second);
  regions.emplace_back(second, second + l);
  grid.boundaries.push_back(0.0);
  for (const auto& [a, b] : regions) {
    for (int s = 1; s < slices_per_region; ++s)
      grid.boundaries.push_back(a + (b - a) * s / slices_per_region);
    grid.boundaries.push_back(b);
  }
  return grid;
}

void SliceGrid::validate() const {
  if (boundaries.size() < 2) throw InvalidParameters("slice grid needs at least two boundaries");
  for (std::size_t i = 1; i < boundaries.size(); ++i)
    if (!(boundaries[i] > boundaries[i - 1]))
      throw InvalidParameters("slice boundaries must be strictly increasing");
}

DoubleBarrierAmplitudes integrate_sliced(const PhysicalParams& params, const SliceGrid& grid) {
  params.validate();
  grid.validate();
  const Layer outside = free_layer(params);
  Accumulated acc;
  double worst = 0.0;
  Layer current = outside;
  const auto& xs = grid.boundaries;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    const double coupling = inside_zone(mid, params) ? params.omega : 0.0;
    const Layer next = slice_layer(params, coupling, xs[i + 1] - xs[i]);
    attach(acc, interface(current, next, params, xs[i], worst), params, xs[i]);
    propagate(acc, next);
    current = next;
  }
  attach(acc, interface(current, outside, params, xs.back(), worst), params, xs.back());

  const Complex i(0.0, 1.0);
  const double end = xs.back();
  DoubleBarrierAmplitudes out;
  out.r11 = acc.refl(0, 0);
  out.r12 = acc.refl(1, 0);
  out.t11 = acc.trans(0, 0) * std::exp(-i * outside.wavenumbers(0) * end);
  out.t12 = acc.trans(1, 0) * std::exp(-i * outside.wavenumbers(1) * end);
  out.residual = worst;
  const bool finite = std::isfinite(std::abs(out.t11)) && std::isfinite(std::abs(out.r11)) &&
                      std::isfinite(std::abs(out.r12));
  if (!finite) conditioning_failure(params, end, 0.0);
  return out;
}

double amplitude_deviation(const DoubleBarrierAmplitudes& a, const DoubleBarrierAmplitudes& b) {
  double dev = std::max({std::abs(a.t11 - b.t11), std::abs(a.r11 - b.r11), std::abs(a.r12 - b.r12)});
  const double scale = std::max({1.0, std::abs(a.t12), std::abs(b.t12)});
  return std::max(dev, std::abs(a.t12 - b.t12) / scale);
}

std::vector<ConvergenceRow> convergence_report(const PhysicalParams& params,
                                               std::span<const int> slice_counts) {
  const DoubleBarrierAmplitudes reference = double_barrier_solve(params);
  std::vector<ConvergenceRow> rows;
  rows.reserve(slice_counts.size());
  for (const int n : slice_counts) {
    const DoubleBarrierAmplitudes sliced = integrate_sliced(params, SliceGrid::uniform(params, n));
    rows.push_back({n, amplitude_deviation(sliced, reference), flux_residual(sliced, params)});
  }
  return rows;
}

}  // namespace ramsey
