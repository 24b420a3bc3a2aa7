#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "omn/errors.hpp"
#include "omn/steady_state.hpp"
#include "test_util.hpp"

using namespace omn;
using omn::test::rel_err;

namespace {
constexpr double kOmegaM = 2.0 * std::numbers::pi * 1e8;
constexpr double kKappa = 8.81e7;
// mpmath, 40 digits: E / sqrt(kappa^2 + omega_m^2) and sqrt(2) g0 |c_s|
constexpr double kDriveE = 5993659921921.8992;
constexpr double kG0 = 426.06778308059452;
constexpr double kAbsCsAtOmegaM = 9446.7942211268021;
constexpr double kGmAtOmegaM = 5692173.7679562817;
}  // namespace

TEST_CASE("cavity_amplitude: OPA off") {
  const auto on_resonance = cavity_amplitude(0.0, kKappa, 0.0, 1.234, kDriveE);
  CHECK(on_resonance.imag() == 0.0);
  CHECK(rel_err(on_resonance.real(), kDriveE / kKappa) < 1e-15);

  const double delta = 0.3 * kOmegaM;
  const auto c = cavity_amplitude(delta, kKappa, 0.0, 0.0, kDriveE);
  const auto want = std::complex<double>(kKappa, -delta) * kDriveE / (kKappa * kKappa + delta * delta);
  CHECK(std::abs(c - want) < 1e-14 * std::abs(want));
  CHECK(rel_err(std::abs(c), kDriveE / std::hypot(kKappa, delta)) < 1e-14);

  CHECK(rel_err(std::abs(cavity_amplitude(kOmegaM, kKappa, 0.0, 0.0, kDriveE)), kAbsCsAtOmegaM) < 1e-12);
}

TEST_CASE("cavity_amplitude: parametric threshold guard") {
  try {
    cavity_amplitude(0.0, kKappa, 0.75 * kKappa, 0.0, kDriveE);
    FAIL("expected ThresholdSingularity");
  } catch (const PhysicsError& e) {
    CHECK(e.code() == ErrorCode::threshold_singularity);
  }
  // exactly at threshold
  CHECK_THROWS_AS(cavity_amplitude(0.0, kKappa, 0.5 * kKappa, 0.0, kDriveE), PhysicsError);
  // just below threshold still fine
  CHECK_NOTHROW(cavity_amplitude(0.0, kKappa, 0.499 * kKappa, 0.0, kDriveE));
}

TEST_CASE("cavity_amplitude: conjugate symmetry") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double delta = u(rng) * kOmegaM;
    const double theta = u(rng) * std::numbers::pi;
    const double cg = std::abs(u(rng)) * 0.2 * kKappa;
    const auto a = cavity_amplitude(delta, kKappa, cg, theta, kDriveE);
    const auto b = cavity_amplitude(-delta, kKappa, cg, -theta, kDriveE);
    CHECK(rel_err(std::abs(b), std::abs(a)) < 1e-14);
  }
}

TEST_CASE("displacements") {
  const std::complex<double> cs(1000.0, -300.0);
  auto [q1, q2] = displacements(kG0, cs, kOmegaM, kOmegaM, 0.0);
  CHECK(rel_err(q1, kG0 * std::norm(cs) / kOmegaM) < 1e-15);
  CHECK(q2 == 0.0);

  std::tie(q1, q2) = displacements(kG0, {0.0, 0.0}, kOmegaM, kOmegaM, 0.3 * kOmegaM);
  CHECK(q1 == 0.0);
  CHECK(q2 == 0.0);

  // 1 - 0.95^2 = 0.0975
  std::tie(q1, q2) = displacements(kG0, cs, kOmegaM, kOmegaM, 0.95 * kOmegaM);
  CHECK(rel_err(q1, kG0 * std::norm(cs) / (0.0975 * kOmegaM)) < 1e-13);
  CHECK(rel_err(q2, -0.95 * q1) < 1e-15);

  std::tie(q1, q2) = displacements(kG0, cs, kOmegaM, kOmegaM, -0.5 * kOmegaM);
  CHECK(q2 > 0.0);  // sign opposite to lambda * q1

  try {
    displacements(kG0, cs, kOmegaM, kOmegaM, kOmegaM);
    FAIL("expected DegenerateNormalMode");
  } catch (const PhysicsError& e) {
    CHECK(e.code() == ErrorCode::degenerate_normal_mode);
  }
}

TEST_CASE("displacements scale with |c_s|^2") {
  const auto c1 = cavity_amplitude(0.7 * kOmegaM, kKappa, 0.0, 0.0, kDriveE);
  const auto c2 = cavity_amplitude(0.7 * kOmegaM, kKappa, 0.0, 0.0, 2.0 * kDriveE);
  const auto [a1, a2] = displacements(kG0, c1, kOmegaM, kOmegaM, 0.6 * kOmegaM);
  const auto [b1, b2] = displacements(kG0, c2, kOmegaM, kOmegaM, 0.6 * kOmegaM);
  CHECK(rel_err(b1, 4.0 * a1) < 1e-14);
  CHECK(rel_err(b2, 4.0 * a2) < 1e-14);
}

TEST_CASE("effective_coupling") {
  CHECK(effective_coupling(kG0, {0.0, 0.0}) == 0.0);
  CHECK(effective_coupling(kG0, {1.0, 0.0}) == std::numbers::sqrt2 * kG0);
  CHECK(rel_err(effective_coupling(kG0, {kAbsCsAtOmegaM, 0.0}), kGmAtOmegaM) < 1e-12);
  const std::complex<double> cs(123.0, 456.0);
  for (double phi = 0.0; phi < 6.3; phi += 0.5) {
    CHECK(rel_err(effective_coupling(kG0, cs * std::polar(1.0, phi)), effective_coupling(kG0, cs)) < 1e-14);
  }
}
