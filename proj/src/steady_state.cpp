#include "omn/steady_state.hpp"

#include <cmath>
#include <numbers>
#include <tuple>

#include "omn/errors.hpp"

namespace omn {

std::complex<double> cavity_amplitude(double detuning, double kappa, double opa_gain,
                                      double opa_phase, double drive_E) {
  const double denom = kappa * kappa + detuning * detuning - 4.0 * opa_gain * opa_gain;
  if (denom <= kThresholdEpsilon * kappa * kappa) {
    throw PhysicsError(ErrorCode::threshold_singularity,
                       "OPA gain at or above the parametric threshold");
  }
  const std::complex<double> numer =
      std::complex<double>(kappa, -detuning) + 2.0 * opa_gain * std::polar(1.0, opa_phase);
  return numer * (drive_E / denom);
}

std::pair<double, double> displacements(double g0, std::complex<double> c_s, double omega_m1,
                                        double omega_m2, double lambda) {
  if (omega_m1 * omega_m2 - lambda * lambda <= 0.0) {
    throw PhysicsError(ErrorCode::degenerate_normal_mode,
                       "Coulomb coupling too strong: coupled potential is unbounded");
  }
  const double q1s = g0 * std::norm(c_s) / (omega_m1 - lambda * lambda / omega_m2);
  const double q2s = -(lambda / omega_m2) * q1s;
  return {q1s, q2s};
}

double effective_coupling(double g0, std::complex<double> c_s) {
  return std::numbers::sqrt2 * g0 * std::abs(c_s);
}

SteadyState steady_state(const SystemParams& p, double drive_E, double g0) {
  SteadyState s;
  s.c_s = cavity_amplitude(p.detuning, p.kappa, p.opa_gain, p.opa_phase, drive_E);
  std::tie(s.q1s, s.q2s) = displacements(g0, s.c_s, p.omega_m1, p.omega_m2, p.coulomb_lambda);
  s.g_m = effective_coupling(g0, s.c_s);
  return s;
}

}  // namespace omn
