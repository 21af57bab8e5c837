#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ramsey/barrier.hpp"
#include "support.hpp"

using namespace ramsey;
using fixtures::rel_diff;

namespace {

const Complex I(0.0, 1.0);

double max_entry_diff(const AlphaClosedForm& c, const AlphaMatrix& a) {
  const std::pair<Complex, Complex> pairs[] = {
      {c.a11, a(0, 0)}, {c.a33, a(2, 2)}, {c.a31, a(2, 0)}, {c.a13, a(0, 2)},
      {c.a41, a(3, 0)}, {c.a23, a(1, 2)}, {c.a21, a(1, 0)}, {c.a43, a(3, 2)}};
  double worst = 0.0;
  for (const auto& [x, y] : pairs) worst = std::max(worst, rel_diff(x, y));
  return worst;
}

}  // namespace

TEST_CASE("free matching matrix at the origin") {
  const PhysicalParams p{1.0, 0.2, 0.0, 1.0, 0.0};
  const Matrix4c m = matching_matrix_free(0.0, channel_kinematics(p));
  CHECK(m(0, 0) == Complex(1, 0));
  CHECK(m(0, 1) == Complex(1, 0));
  CHECK(m(1, 0) == I);
  CHECK(m(1, 1) == -I);
  CHECK(m(0, 2) == Complex(0, 0));

  const PhysicalParams p2{1.3, 0.2, 0.4, 1.0, 0.0};
  const auto kin = channel_kinematics(p2);
  const Matrix4c m2 = matching_matrix_free(0.0, kin);
  CHECK(m2(2, 2) == Complex(1, 0));
  CHECK(m2(2, 3) == Complex(1, 0));
  CHECK(std::abs(m2(3, 2) - I * kin.q) < 1e-15);
  CHECK(std::abs(m2(3, 3) + I * kin.q) < 1e-15);
  // block determinant (-2ik)(-2iq)
  const Complex expected = (-2.0 * I * kin.k) * (-2.0 * I * kin.q);
  CHECK(std::abs(m2.determinant() - expected) < 1e-13);
}

TEST_CASE("dressed matching matrix weights") {
  const Matrix4c resonant = matching_matrix_barrier(0.0, channel_kinematics({1.0, 0.5, 0.0, 1.0, 0.0}));
  for (int c = 0; c < 4; ++c) CHECK(resonant(0, c) == Complex(1, 0));
  CHECK(resonant(2, 0).real() == doctest::Approx(1.0));
  CHECK(resonant(2, 2).real() == doctest::Approx(-1.0));

  // lambda = (0.5, -4.5): weights 2 lambda / 3 = (1/3, -3)
  const Matrix4c m = matching_matrix_barrier(0.0, channel_kinematics({2.0, 3.0, 4.0, 1.0, 0.0}));
  CHECK(m(2, 0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(m(2, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(m(2, 2).real() == doctest::Approx(-3.0).epsilon(1e-14));

  CHECK_THROWS_AS(matching_matrix_barrier(0.0, channel_kinematics({1.0, 0.0, 0.0, 1.0, 0.0})),
                  DegenerateBasis);
}

TEST_CASE("alpha is the identity without coupling") {
  const AlphaMatrix a = alpha_from_matrices(2.0, {1.0, 0.0, 0.3, 1.0, 0.0});
  CHECK((a.rounded() - Matrix4c::Identity()).norm() == 0.0);
}

TEST_CASE("weak coupling is nearly transparent") {
  const auto set = scattering_from_alpha(alpha_from_matrices(0.0, {1.0, 1e-8, 0.3, 1.0, 0.0}));
  CHECK(std::abs(set.t_left[0][0]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(set.t_left[0][1]) < 1e-7);
  CHECK(std::abs(set.r_left[0][0]) < 1e-7);
}

TEST_CASE("closed-form alpha entries match the matrix product") {
  SUBCASE("fringe fixture") {
    const auto p = fixtures::fringe(0.3);
    CHECK(max_entry_diff(alpha_closed_form(p), alpha_from_matrices(0.0, p)) < 1e-10);
  }
  SUBCASE("ultracold fixture") {
    for (double delta : {-0.004, 0.0, 0.0265827, 0.15}) {
      const auto p = fixtures::ultracold(delta);
      CHECK(max_entry_diff(alpha_closed_form(p), alpha_from_matrices(0.0, p)) < 1e-10);
    }
  }
  SUBCASE("random grid") {
    fixtures::ParamSampler sample(21);
    for (int i = 0; i < 1000; ++i) {
      PhysicalParams p = i % 4 ? sample.open() : sample.closed();
      if (p.omega == 0.0) continue;
      INFO(p.describe());
      REQUIRE(max_entry_diff(alpha_closed_form(p), alpha_from_matrices(0.0, p)) < 1e-10);
    }
  }
}

TEST_CASE("closed-form special cases") {
  const auto p = fixtures::fringe(0.0);
  const auto c = alpha_closed_form(p);
  CHECK(std::abs(c.a33 - c.a11) < 1e-15);

  // k+ l = pi and k- l = 3 pi: both cosines are -1, both sines vanish.
  const double pi = std::numbers::pi;
  const PhysicalParams tuned{pi * std::sqrt(5.0), 4.0 * pi * pi, 0.0, 1.0, 0.0};
  const auto kin = channel_kinematics(tuned);
  REQUIRE(kin.k_plus.real() == doctest::Approx(pi));
  REQUIRE(kin.k_minus.real() == doctest::Approx(3.0 * pi));
  CHECK(std::abs(alpha_closed_form(tuned).a11) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solved amplitudes agree with the alpha-entry expressions") {
  fixtures::ParamSampler sample(22);
  for (int i = 0; i < 500; ++i) {
    const PhysicalParams p = sample.open();
    if (p.omega == 0.0) continue;
    const AlphaMatrix alpha = alpha_from_matrices(0.0, p);
    const auto set = scattering_from_alpha(alpha);
    const auto e = amplitudes_from_alpha_entries(alpha);
    INFO(p.describe());
    REQUIRE(rel_diff(set.t_left[0][0], e.t11) < 1e-10);
    REQUIRE(rel_diff(set.t_left[0][1], e.t12) < 1e-10);
    REQUIRE(rel_diff(set.t_left[1][1], e.t22) < 1e-10);
    REQUIRE(rel_diff(set.r_left[0][0], e.r11) < 1e-10);
    REQUIRE(rel_diff(set.r_left[1][1], e.r22) < 1e-10);
  }
}

TEST_CASE("single-zone flux unitarity") {
  fixtures::ParamSampler sample(23);
  for (int i = 0; i < 1000; ++i) {
    const PhysicalParams p = sample.open();
    const auto s = flux_normalized_smatrix(scattering_from_alpha(alpha_from_matrices(0.0, p)),
                                           channel_kinematics(p));
    INFO(p.describe());
    REQUIRE(s.rows() == 4);
    REQUIRE(unitarity_residual(s) < 1e-10);
  }
}

TEST_CASE("closed excited channel carries no flux") {
  fixtures::ParamSampler sample(24);
  for (int i = 0; i < 500; ++i) {
    const PhysicalParams p = sample.closed();
    const auto set = scattering_from_alpha(alpha_from_matrices(0.0, p));
    const double ground = std::norm(set.t_left[0][0]) + std::norm(set.r_left[0][0]);
    INFO(p.describe());
    REQUIRE(std::abs(ground - 1.0) < 1e-10);
    REQUIRE(flux_normalized_smatrix(set, channel_kinematics(p)).rows() == 2);
  }
}

TEST_CASE("right reflection is the left one shifted across the zone at resonance") {
  for (const auto& p : {fixtures::fringe(0.0), fixtures::ultracold(0.0)}) {
    const auto set = scattering_from_alpha(alpha_from_matrices(0.0, p));
    const double k = p.k;
    CHECK(std::abs(set.r_right[0][0] - set.r_left[0][0] * std::exp(-2.0 * I * k * p.width)) <
          1e-12);
    CHECK(std::abs(set.r_right[1][1] - set.r_left[1][1] * std::exp(-2.0 * I * k * p.width)) <
          1e-12);
  }
}

TEST_CASE("translation covariance") {
  fixtures::ParamSampler sample(25);
  for (int n = 0; n < 300; ++n) {
    PhysicalParams p = sample.open();
    p.gap = std::min(p.gap, 10.0);
    const double a = p.second_barrier_start();
    const auto kin = channel_kinematics(p);
    const std::array<Complex, 2> kk{Complex(p.k, 0.0), kin.q};
    const auto s0 = scattering_from_alpha(alpha_from_matrices(0.0, p));
    const auto sa = scattering_from_alpha(alpha_from_matrices(a, p));
    INFO(p.describe());
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        REQUIRE(std::abs(sa.t_left[i][j] - s0.t_left[i][j] * std::exp(I * (kk[i] - kk[j]) * a)) <
                1e-12);
        REQUIRE(std::abs(sa.r_left[i][j] - s0.r_left[i][j] * std::exp(I * (kk[i] + kk[j]) * a)) <
                1e-12);
        REQUIRE(std::abs(sa.r_right[i][j] -
                         s0.r_right[i][j] * std::exp(-I * (kk[i] + kk[j]) * a)) < 1e-12);
      }
  }
}

TEST_CASE("one-channel amplitudes") {
  const auto free = one_channel_amplitudes(1.3, 0.0, 2.0);
  CHECK(std::abs(free.tau) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(free.rho) < 1e-15);

  // kappa l = 2 pi with kappa^2 = k^2 - 2 h
  const double l = 1.0, k = 1.0, kappa = 2.0 * std::numbers::pi;
  const auto resonant = one_channel_amplitudes(k, 0.5 * (k * k - kappa * kappa), l);
  CHECK(std::abs(resonant.tau) == doctest::Approx(1.0).epsilon(1e-12));

  fixtures::ParamSampler sample(26);
  for (int i = 0; i < 1000; ++i) {
    const auto a = one_channel_amplitudes(sample.uniform(0.05, 10.0), sample.uniform(-50.0, 50.0),
                                          sample.uniform(0.1, 3.0));
    REQUIRE(std::abs(std::norm(a.tau) + std::norm(a.rho) - 1.0) < 1e-12);
  }
}

TEST_CASE("resonant zone decouples into barrier and well") {
  fixtures::ParamSampler sample(27);
  for (int i = 0; i < 500; ++i) {
    PhysicalParams p = sample.open();
    p.delta = 0.0;
    if (p.omega == 0.0) continue;
    const auto set = scattering_from_alpha(alpha_from_matrices(0.0, p));
    const auto barrier = one_channel_amplitudes(p.k, 0.5 * p.omega, p.width);
    const auto well = one_channel_amplitudes(p.k, -0.5 * p.omega, p.width);
    INFO(p.describe());
    REQUIRE(std::abs(set.t_left[0][0] - 0.5 * (barrier.tau + well.tau)) < 1e-10);
    REQUIRE(std::abs(set.t_left[0][1] - 0.5 * (barrier.tau - well.tau)) < 1e-10);
    REQUIRE(std::abs(set.t_left[1][1] - 0.5 * (barrier.tau + well.tau)) < 1e-10);
    REQUIRE(std::abs(set.r_left[0][0] - 0.5 * (barrier.rho + well.rho)) < 1e-10);
    REQUIRE(std::abs(set.r_left[0][1] - 0.5 * (barrier.rho - well.rho)) < 1e-10);
    REQUIRE(std::abs(set.r_left[1][1] - 0.5 * (barrier.rho + well.rho)) < 1e-10);
  }
}
