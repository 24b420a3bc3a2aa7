#pragma once
// Classical steady-state mean values of the driven cavity and the two
// oscillators. Momenta vanish in the steady state and are not stored.

#include <complex>
#include <utility>

#include "omn/params.hpp"

namespace omn {

struct SteadyState {
  std::complex<double> c_s;
  double q1s = 0.0;
  double q2s = 0.0;
  double g_m = 0.0;  // rad/s, always >= 0
};

/// Relative guard against kappa^2 for the parametric-threshold denominator.
inline constexpr double kThresholdEpsilon = 1e-9;

/// c_s = (kappa - i Delta + 2 C_g e^{i theta}) E / (kappa^2 + Delta^2 - 4 C_g^2).
/// Throws PhysicsError(threshold_singularity) when the denominator is
/// <= kThresholdEpsilon * kappa^2, i.e. at or above the OPA threshold.
std::complex<double> cavity_amplitude(double detuning, double kappa, double opa_gain,
                                      double opa_phase, double drive_E);

/// (q1s, q2s) for the Coulomb-coupled pair; q2s = -(lambda/omega_m2) q1s.
/// Throws PhysicsError(degenerate_normal_mode) when omega_m1 omega_m2 <= lambda^2.
std::pair<double, double> displacements(double g0, std::complex<double> c_s, double omega_m1,
                                        double omega_m2, double lambda);

/// sqrt(2) g0 |c_s|.
double effective_coupling(double g0, std::complex<double> c_s);

SteadyState steady_state(const SystemParams& params, double drive_E, double g0);

}  // namespace omn
