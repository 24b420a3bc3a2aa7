#pragma once
// Linearized fluctuation dynamics: drift and diffusion matrices, stability,
// and the steady-state / transient covariance matrix.
//
// Quadrature order everywhere is (dq1, dp1, dq2, dp2, dX, dY). Covariances use
// the convention <f_i f_j + f_j f_i>/2 with vacuum variance 1/2.

#include <complex>
#include <vector>

#include "omn/params.hpp"
#include "omn/smallmat.hpp"

namespace omn {

inline constexpr std::size_t kModes = 6;

/// Stability margin relative to omega_m1 used by build_drift.
inline constexpr double kStabilityMargin = 1e-9;

struct DriftMatrix {
  Mat m = Mat(kModes, kModes);
  /// An eigenvalue counts as decaying only if Re < -stability_margin.
  double stability_margin = 0.0;
};

struct DiffusionMatrix {
  Mat d = Mat(kModes, kModes);
};

struct CovarianceMatrix {
  Mat v = Mat(kModes, kModes);
};

struct StabilityReport {
  bool stable = false;
  double max_real_part = 0.0;
  std::vector<std::complex<double>> eigenvalues;
};

DriftMatrix build_drift(const SystemParams& params, double g_m);

DiffusionMatrix build_diffusion(const SystemParams& params, double nbar1, double nbar2);
inline DiffusionMatrix build_diffusion(const SystemParams& params, double nbar) {
  return build_diffusion(params, nbar, nbar);
}

StabilityReport stability(const DriftMatrix& drift);

/// Solves M V + V M^T + D = 0 through the vectorized (M (x) I + I (x) M)
/// system and symmetrizes the result. Throws PhysicsError(unstable_system)
/// when the drift is not stable and PhysicsError(singular_solve) near marginal
/// stability.
CovarianceMatrix steady_covariance(const DriftMatrix& drift, const DiffusionMatrix& diffusion);

/// ||M V + V M^T + D||_F / ||D||_F.
double lyapunov_residual(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                         const CovarianceMatrix& cov);

/// One classical RK4 step of dV/dt = M V + V M^T + D, followed by symmetrization.
Mat rk4_covariance_step(const Mat& m, const Mat& d, const Mat& v, double dt);

/// Integrates the covariance ODE from v0 to t_end with the fixed RK4 step
/// above, using N = ceil(t_end/dt) equal steps. The step map is affine in V,
/// so N steps are applied as the N-th power of its augmented matrix.
/// Throws PhysicsError(step_too_large) when dt > 0.1 / ||M||_2.
CovarianceMatrix evolve_covariance(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                                   const CovarianceMatrix& v0, double t_end, double dt);

/// Same integration as evolve_covariance, stepping one step at a time.
CovarianceMatrix evolve_covariance_stepwise(const DriftMatrix& drift,
                                            const DiffusionMatrix& diffusion,
                                            const CovarianceMatrix& v0, double t_end, double dt);

}  // namespace omn
