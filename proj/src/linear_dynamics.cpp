#include "omn/linear_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "omn/errors.hpp"
#include "omn/kernels.hpp"

namespace omn {

DriftMatrix build_drift(const SystemParams& p, double g_m) {
  DriftMatrix out;
  out.stability_margin = kStabilityMargin * p.omega_m1;
  Mat& m = out.m;
  const double cg2 = 2.0 * p.opa_gain;
  const double cos_t = std::cos(p.opa_phase);
  const double sin_t = std::sin(p.opa_phase);

  m(0, 1) = p.omega_m1;
  m(1, 0) = -p.omega_m1;
  m(1, 1) = -p.gamma_m1;
  m(1, 2) = -p.coulomb_lambda;
  m(1, 4) = g_m;
  m(2, 3) = p.omega_m2;
  m(3, 0) = -p.coulomb_lambda;
  m(3, 2) = -p.omega_m2;
  m(3, 3) = -p.gamma_m2;
  m(4, 4) = cg2 * cos_t - p.kappa;
  m(4, 5) = cg2 * sin_t + p.detuning;
  m(5, 0) = g_m;
  m(5, 4) = cg2 * sin_t - p.detuning;
  m(5, 5) = -(cg2 * cos_t + p.kappa);
  return out;
}

DiffusionMatrix build_diffusion(const SystemParams& p, double nbar1, double nbar2) {
  if (!(nbar1 >= 0.0) || !(nbar2 >= 0.0)) {
    throw std::invalid_argument("thermal occupation must be >= 0");
  }
  DiffusionMatrix out;
  out.d(1, 1) = p.gamma_m1 * (2.0 * nbar1 + 1.0);
  out.d(3, 3) = p.gamma_m2 * (2.0 * nbar2 + 1.0);
  out.d(4, 4) = p.kappa;
  out.d(5, 5) = p.kappa;
  return out;
}

StabilityReport stability(const DriftMatrix& drift) {
  StabilityReport r;
  r.eigenvalues = eigenvalues(drift.m);
  r.max_real_part = -INFINITY;
  for (const auto& ev : r.eigenvalues) r.max_real_part = std::max(r.max_real_part, ev.real());
  r.stable = r.max_real_part < -drift.stability_margin;
  return r;
}

CovarianceMatrix steady_covariance(const DriftMatrix& drift, const DiffusionMatrix& diffusion) {
  const Mat& m = drift.m;
  const Mat& d = diffusion.d;
  if (!m.square() || m.rows() * m.rows() > Mat::kMaxDim || d.rows() != m.rows() ||
      d.cols() != m.cols()) {
    throw std::invalid_argument("steady_covariance: incompatible drift/diffusion shapes");
  }
  const StabilityReport report = stability(drift);
  if (!report.stable) {
    throw PhysicsError(ErrorCode::unstable_system,
                       "drift matrix has an eigenvalue with real part " +
                           std::to_string(report.max_real_part));
  }
  const std::size_t n = m.rows();
  const Mat eye = Mat::identity(n);
  const Mat op = kron(m, eye) + kron(eye, m);  // row-major vec(V) convention
  std::vector<double> rhs(d.data().begin(), d.data().end());
  for (double& x : rhs) x = -x;
  std::vector<double> x = solve(op, rhs);

  CovarianceMatrix out{Mat(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.v(i, j) = 0.5 * (x[i * n + j] + x[j * n + i]);
  return out;
}

double lyapunov_residual(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                         const CovarianceMatrix& cov) {
  Mat r = matmul(drift.m, cov.v) + matmul(cov.v, drift.m.transpose()) + diffusion.d;
  const double dn = frob_norm(diffusion.d);
  return frob_norm(r) / (dn > 0.0 ? dn : 1.0);
}

namespace {

Mat covariance_rate(const Mat& m, const Mat& mt, const Mat& d, const Mat& v) {
  return matmul(m, v) + matmul(v, mt) + d;
}

void symmetrize(Mat& v) {
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = i + 1; j < v.cols(); ++j) {
      const double s = 0.5 * (v(i, j) + v(j, i));
      v(i, j) = s;
      v(j, i) = s;
    }
}

struct StepPlan {
  std::size_t steps = 0;
  double h = 0.0;
};

StepPlan plan_steps(const Mat& m, double t_end, double dt) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const double bound = 0.1 / spectral_norm(m);
  if (dt > bound) {
    throw PhysicsError(ErrorCode::step_too_large,
                       "dt exceeds 0.1/||M||_2 = " + std::to_string(bound));
  }
  StepPlan plan;
  if (t_end == 0.0) return plan;
  plan.steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  plan.h = t_end / static_cast<double>(plan.steps);
  return plan;
}

void check_shapes(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                  const CovarianceMatrix& v0) {
  const std::size_t n = drift.m.rows();
  if (!drift.m.square() || diffusion.d.rows() != n || diffusion.d.cols() != n ||
      v0.v.rows() != n || v0.v.cols() != n) {
    throw std::invalid_argument("evolve_covariance: incompatible shapes");
  }
}

}  // namespace

Mat rk4_covariance_step(const Mat& m, const Mat& d, const Mat& v, double dt) {
  const Mat mt = m.transpose();
  const Mat k1 = covariance_rate(m, mt, d, v);
  const Mat k2 = covariance_rate(m, mt, d, v + (0.5 * dt) * k1);
  const Mat k3 = covariance_rate(m, mt, d, v + (0.5 * dt) * k2);
  const Mat k4 = covariance_rate(m, mt, d, v + dt * k3);
  Mat next = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  symmetrize(next);
  return next;
}

CovarianceMatrix evolve_covariance_stepwise(const DriftMatrix& drift,
                                            const DiffusionMatrix& diffusion,
                                            const CovarianceMatrix& v0, double t_end, double dt) {
  check_shapes(drift, diffusion, v0);
  const StepPlan plan = plan_steps(drift.m, t_end, dt);
  Mat v = v0.v;
  for (std::size_t s = 0; s < plan.steps; ++s) v = rk4_covariance_step(drift.m, diffusion.d, v, plan.h);
  return {v};
}

CovarianceMatrix evolve_covariance(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                                   const CovarianceMatrix& v0, double t_end, double dt) {
  check_shapes(drift, diffusion, v0);
  const StepPlan plan = plan_steps(drift.m, t_end, dt);
  if (plan.steps == 0) return v0;

  const std::size_t n = drift.m.rows();
  const std::size_t nn = n * n;
  const std::size_t dim = nn + 1;  // augmented with the constant term

  // Probe the affine step map: column j = step(E_j) - step(0), last = step(0).
  const Mat zero(n, n);
  const Mat offset = rk4_covariance_step(drift.m, diffusion.d, zero, plan.h);
  std::vector<double> op(dim * dim, 0.0);
  for (std::size_t j = 0; j < nn; ++j) {
    Mat basis(n, n);
    basis(j / n, j % n) = 1.0;
    const Mat col = rk4_covariance_step(drift.m, diffusion.d, basis, plan.h) - offset;
    for (std::size_t i = 0; i < nn; ++i) op[i * dim + j] = col.data()[i];
  }
  for (std::size_t i = 0; i < nn; ++i) op[i * dim + nn] = offset.data()[i];
  op[nn * dim + nn] = 1.0;

  std::vector<double> state(dim);
  std::copy(v0.v.data().begin(), v0.v.data().end(), state.begin());
  state[nn] = 1.0;

  const auto& k = kernels::active();
  std::vector<double> scratch(dim * dim);
  std::vector<double> next(dim);
  for (std::size_t remaining = plan.steps; remaining > 0; remaining >>= 1) {
    if (remaining & 1u) {
      for (std::size_t i = 0; i < dim; ++i) next[i] = k.dot(op.data() + i * dim, state.data(), dim);
      state.swap(next);
    }
    if (remaining > 1) {
      k.matmul(op.data(), op.data(), scratch.data(), dim, dim, dim);
      op.swap(scratch);
    }
  }

  CovarianceMatrix out{Mat(n, n, std::vector<double>(state.begin(), state.begin() + nn))};
  symmetrize(out.v);
  return out;
}

}  // namespace omn
