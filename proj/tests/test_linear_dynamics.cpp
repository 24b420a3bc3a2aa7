#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "omn/errors.hpp"
#include "omn/linear_dynamics.hpp"
#include "omn/pipeline.hpp"
#include "test_util.hpp"

using namespace omn;
using omn::test::max_abs_diff;
using omn::test::rel_err;

namespace {

constexpr double pi = std::numbers::pi;

SystemParams baseline_point(double lambda_w, double delta_w, double cg, double theta) {
  SystemParams p = SystemParams::baseline();
  p.coulomb_lambda = lambda_w * p.omega_m1;
  p.detuning = delta_w * p.omega_m1;
  p.opa_gain = cg;
  p.opa_phase = theta;
  return p;
}

// Cholesky succeeds iff the symmetric matrix is positive definite.
bool positive_definite(const Mat& a) {
  const std::size_t n = a.rows();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = a(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= l[j * n + k] * l[j * n + k];
    if (!(s > 0.0)) return false;
    l[j * n + j] = std::sqrt(s);
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = a(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = t / l[j * n + j];
    }
  }
  return true;
}

double rel_frob(const Mat& a, const Mat& b) { return frob_norm(a - b) / frob_norm(b); }

struct Pieces {
  DriftMatrix drift;
  DiffusionMatrix diffusion;
  DerivedQuantities derived;
};

Pieces pieces_for(const SystemParams& p) {
  const DerivedQuantities d = derive(p);
  return {build_drift(p, d.g_m), build_diffusion(p, d.nbar, d.nbar2), d};
}

CovarianceMatrix thermal_vacuum(double nbar) {
  const double th = nbar + 0.5;
  const std::vector<double> diag{th, th, th, th, 0.5, 0.5};
  return {Mat::diagonal(diag)};
}

}  // namespace

TEST_CASE("build_drift: entries and zero pattern") {
  const SystemParams p = baseline_point(0.95, 0.75, 2e7, pi / 16);
  const double gm = 7605185.804324856;  // independent numpy evaluation
  const DerivedQuantities d = derive(p);
  CHECK(rel_err(d.g_m, gm) < 1e-12);
  const Mat& m = build_drift(p, d.g_m).m;

  const bool nonzero_slot[6][6] = {
      {0, 1, 0, 0, 0, 0}, {1, 1, 1, 0, 1, 0}, {0, 0, 0, 1, 0, 0},
      {1, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1}, {1, 0, 0, 0, 1, 1},
  };
  int slots = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      slots += nonzero_slot[i][j];
      if (!nonzero_slot[i][j]) CHECK(m(i, j) == 0.0);
    }
  CHECK(slots == 14);

  CHECK(m(0, 1) == p.omega_m1);
  CHECK(m(1, 0) == -p.omega_m1);
  CHECK(m(1, 1) == -p.gamma_m1);
  CHECK(m(1, 2) == -p.coulomb_lambda);
  CHECK(m(3, 0) == -p.coulomb_lambda);
  CHECK(m(1, 4) == m(5, 0));
  CHECK(rel_err(m(1, 4), gm) < 1e-12);
  CHECK(m(2, 3) == p.omega_m2);
  CHECK(m(3, 2) == -p.omega_m2);
  CHECK(m(3, 3) == -p.gamma_m2);
  CHECK(rel_err(m(4, 4), 4e7 * std::cos(pi / 16) - 8.81e7) < 1e-14);
  CHECK(rel_err(m(4, 5), 4e7 * std::sin(pi / 16) + 0.75 * p.omega_m1) < 1e-14);
  CHECK(rel_err(m(5, 4), 4e7 * std::sin(pi / 16) - 0.75 * p.omega_m1) < 1e-14);
  CHECK(rel_err(m(5, 5), -(4e7 * std::cos(pi / 16) + 8.81e7)) < 1e-14);
}

TEST_CASE("build_drift: special cases and symmetries") {
  SystemParams p = baseline_point(0.0, 0.5, 0.0, 0.0);
  const Mat m = build_drift(p, 0.0).m;
  for (int i : {0, 1, 2, 3})
    for (int j : {4, 5}) {
      CHECK(m(i, j) == 0.0);
      CHECK(m(j, i) == 0.0);
    }
  CHECK(m(1, 2) == 0.0);
  CHECK(m(3, 0) == 0.0);

  p = baseline_point(0.95, 0.5, 3e7, 0.0);
  const Mat m0 = build_drift(p, 1e6).m;
  CHECK(m0(4, 4) == 6e7 - 8.81e7);
  CHECK(m0(4, 5) == p.detuning);
  CHECK(m0(5, 4) == -p.detuning);
  CHECK(m0(5, 5) == -(6e7 + 8.81e7));

  for (double theta : {0.0, pi / 16, pi / 6, pi / 4, 2.5}) {
    p.opa_phase = theta;
    const Mat a = build_drift(p, 1e6).m;
    p.opa_phase = theta + 2 * pi;
    const Mat b = build_drift(p, 1e6).m;
    CHECK(max_abs_diff(a, b) <= 4 * 2.3e-16 * inf_norm(a));  // theta + 2 pi rounds by an ulp
  }

  // OPA off: nothing depends on theta
  p = baseline_point(0.95, 0.8, 0.0, 0.0);
  const DerivedQuantities d0 = derive(p);
  const Mat ref = build_drift(p, d0.g_m).m;
  const double en_ref = evaluate_point(p).entanglement->log_negativity;
  for (double theta : {0.3, 1.0, pi / 4, 3.0}) {
    p.opa_phase = theta;
    const DerivedQuantities d = derive(p);
    CHECK(d.g_m == d0.g_m);
    CHECK(build_drift(p, d.g_m).m == ref);
    CHECK(evaluate_point(p).entanglement->log_negativity == en_ref);
  }
}

TEST_CASE("build_diffusion") {
  SystemParams p = SystemParams::baseline();
  Mat d = build_diffusion(p, 0.0).d;
  const std::vector<double> want0{0, p.gamma_m1, 0, p.gamma_m2, p.kappa, p.kappa};
  CHECK(d == Mat::diagonal(want0));

  d = build_diffusion(p, 0.431).d;
  CHECK(rel_err(d(1, 1), 1169.929104196839) < 1e-14);  // 200 pi (2 * 0.431 + 1)
  CHECK(d(3, 3) == d(1, 1));

  p.gamma_m1 = 0.0;
  p.gamma_m2 = 0.0;
  d = build_diffusion(p, 3.0).d;
  CHECK(d(1, 1) == 0.0);
  CHECK(d(3, 3) == 0.0);
  CHECK(d(4, 4) == p.kappa);
  CHECK_THROWS_AS(build_diffusion(p, -0.1), std::invalid_argument);
}

TEST_CASE("stability") {
  DriftMatrix minus_i{-1.0 * Mat::identity(6), 0.0};
  StabilityReport r = stability(minus_i);
  CHECK(r.stable);
  CHECK(r.max_real_part == doctest::Approx(-1.0));
  CHECK(r.eigenvalues.size() == 6);

  // above the parametric threshold with the optomechanical coupling removed
  SystemParams p = baseline_point(0.95, 0.0, 0.75 * 8.81e7, 0.0);
  r = stability(build_drift(p, 0.0));
  CHECK_FALSE(r.stable);
  CHECK(r.max_real_part > 0.0);

  for (double cg : {0.0, 2e7, 5e7, 8e7, 10e7, 12e7})
    for (double dw : {0.9, 1.0, 1.1}) {
      p = baseline_point(0.95, dw, cg, 0.0);
      const Pieces s = pieces_for(p);
      r = stability(s.drift);
      CAPTURE(cg);
      CAPTURE(dw);
      CHECK(r.stable);
      CHECK(r.max_real_part < 0.0);
    }
}

TEST_CASE("steady_covariance: analytic cases") {
  const DriftMatrix minus_i{-1.0 * Mat::identity(6), 0.0};
  const DiffusionMatrix eye{Mat::identity(6)};
  const CovarianceMatrix v = steady_covariance(minus_i, eye);
  CHECK(max_abs_diff(v.v, 0.5 * Mat::identity(6)) < 1e-15);

  const std::vector<double> m_diag{-1, -2, -0.5, -4, -3, -7};
  const std::vector<double> d_diag{1, 3, 0, 2, 5, 0.25};
  const CovarianceMatrix vd = steady_covariance({Mat::diagonal(m_diag), 0.0}, {Mat::diagonal(d_diag)});
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(vd.v(i, i) == doctest::Approx(-d_diag[i] / (2 * m_diag[i])).epsilon(1e-14));
    for (std::size_t j = 0; j < 6; ++j)
      if (i != j) CHECK(std::abs(vd.v(i, j)) < 1e-15);
  }

  try {
    steady_covariance({Mat::identity(6), 0.0}, eye);
    FAIL("expected UnstableSystem");
  } catch (const PhysicsError& e) {
    CHECK(e.code() == ErrorCode::unstable_system);
  }
}

TEST_CASE("steady_covariance: baseline residual, symmetry, definiteness") {
  for (double lw : {0.3, 0.5, 0.95})
    for (double dw : {0.3, 0.9, 1.0, 1.6}) {
      const Pieces s = pieces_for(baseline_point(lw, dw, 0.0, 0.0));
      const CovarianceMatrix v = steady_covariance(s.drift, s.diffusion);
      CAPTURE(lw);
      CAPTURE(dw);
      CHECK(lyapunov_residual(s.drift, s.diffusion, v) <= 1e-9);
      CHECK(v.v == v.v.transpose());
      CHECK(positive_definite(v.v));
    }
}

TEST_CASE("steady_covariance: linear in D") {
  const Pieces s = pieces_for(baseline_point(0.95, 0.9, 5e7, pi / 6));
  const CovarianceMatrix v = steady_covariance(s.drift, s.diffusion);
  for (double alpha : {0.5, 3.0, 17.0}) {
    const CovarianceMatrix va = steady_covariance(s.drift, {alpha * s.diffusion.d});
    CHECK(rel_frob(va.v, alpha * v.v) < 1e-9);
  }
}

TEST_CASE("steady_covariance: decoupled oscillators are thermal") {
  const SystemParams p = baseline_point(0.0, 0.9, 0.0, 0.0);
  const DerivedQuantities d = derive(p);
  const CovarianceMatrix v = steady_covariance(build_drift(p, 0.0), build_diffusion(p, d.nbar, d.nbar2));
  const double th = d.nbar + 0.5;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      if (i / 2 != j / 2) CHECK(std::abs(v.v(i, j)) <= 1e-9 * th);
    }
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rel_err(v.v(i, i), th) <= 1e-9);
  }
  CHECK(std::abs(v.v(0, 1)) <= 1e-9 * th);
  CHECK(std::abs(v.v(2, 3)) <= 1e-9 * th);
}

TEST_CASE("evolve_covariance: analytic scalar solution") {
  const DriftMatrix minus_i{-1.0 * Mat::identity(6), 0.0};
  const DiffusionMatrix eye{Mat::identity(6)};
  const CovarianceMatrix zero{Mat(6, 6)};
  for (double t : {0.1, 1.0, 3.0}) {
    const CovarianceMatrix v = evolve_covariance(minus_i, eye, zero, t, 1e-3);
    const double want = 0.5 * (1.0 - std::exp(-2.0 * t));
    for (std::size_t i = 0; i < 6; ++i) CHECK(rel_err(v.v(i, i), want) < 1e-10);
  }
  const CovarianceMatrix v0{Mat::identity(6)};
  CHECK(evolve_covariance(minus_i, eye, v0, 0.0, 1e-3).v == v0.v);

  try {
    evolve_covariance(minus_i, eye, zero, 1.0, 0.2);
    FAIL("expected StepTooLarge");
  } catch (const PhysicsError& e) {
    CHECK(e.code() == ErrorCode::step_too_large);
  }
  CHECK_THROWS_AS(evolve_covariance(minus_i, eye, zero, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("evolve_covariance: powered step map equals stepping") {
  const Pieces s = pieces_for(baseline_point(0.95, 0.75, 2e7, pi / 16));
  const double dt = 0.1 / spectral_norm(s.drift.m);
  const CovarianceMatrix v0 = thermal_vacuum(s.derived.nbar);
  for (std::size_t steps : {1u, 2u, 7u, 64u, 301u}) {
    const double t = steps * dt * 0.999;
    const CovarianceMatrix a = evolve_covariance(s.drift, s.diffusion, v0, t, dt);
    const CovarianceMatrix b = evolve_covariance_stepwise(s.drift, s.diffusion, v0, t, dt);
    CAPTURE(steps);
    CHECK(rel_frob(a.v, b.v) < 1e-12);
  }
}

TEST_CASE("evolve_covariance converges to steady_covariance") {
  for (double dw : {0.6, 1.0}) {
    const Pieces s = pieces_for(baseline_point(0.95, dw, 0.0, 0.0));
    const StabilityReport r = stability(s.drift);
    REQUIRE(r.stable);
    const double dt = 0.1 / spectral_norm(s.drift.m);
    const CovarianceMatrix vt =
        evolve_covariance(s.drift, s.diffusion, thermal_vacuum(s.derived.nbar), 10.0 / std::abs(r.max_real_part), dt);
    const CovarianceMatrix vs = steady_covariance(s.drift, s.diffusion);
    CHECK(rel_frob(vt.v, vs.v) < 1e-6);
  }
}
