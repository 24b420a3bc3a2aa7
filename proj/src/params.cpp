#include "omn/params.hpp"

#include <cmath>
#include <string>

#include "omn/errors.hpp"
#include "omn/steady_state.hpp"

namespace omn {

SystemParams SystemParams::baseline() {
  constexpr double omega_m = 200.0 * std::numbers::pi * 1e6;
  SystemParams p;
  p.omega_m1 = omega_m;
  p.omega_m2 = omega_m;
  p.gamma_m1 = 200.0 * std::numbers::pi;
  p.gamma_m2 = 200.0 * std::numbers::pi;
  p.kappa = 8.81e7;
  p.mass = 5e-12;
  p.cavity_length = 1e-3;
  p.laser_wavelength = 810e-9;
  p.power = 50e-3;
  p.detuning = omega_m;
  p.coulomb_lambda = 0.95 * omega_m;
  p.opa_gain = 0.0;
  p.opa_phase = 0.0;
  p.temperature = 4e-3;
  return p;
}

void SystemParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw PhysicsError(ErrorCode::invalid_params, std::string("invalid parameter: ") + what);
  };
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(omega_m1) && omega_m1 > 0.0, "omega_m1 must be > 0");
  require(finite(omega_m2) && omega_m2 > 0.0, "omega_m2 must be > 0");
  require(finite(gamma_m1) && gamma_m1 > 0.0, "gamma_m1 must be > 0");
  require(finite(gamma_m2) && gamma_m2 > 0.0, "gamma_m2 must be > 0");
  require(finite(kappa) && kappa > 0.0, "kappa must be > 0");
  require(finite(mass) && mass > 0.0, "mass must be > 0");
  require(finite(cavity_length) && cavity_length > 0.0, "cavity_length must be > 0");
  require(finite(laser_wavelength) && laser_wavelength > 0.0, "laser_wavelength must be > 0");
  require(finite(power) && power >= 0.0, "power must be >= 0");
  require(finite(opa_gain) && opa_gain >= 0.0, "opa_gain must be >= 0");
  require(finite(temperature) && temperature >= 0.0, "temperature must be >= 0");
  require(finite(detuning), "detuning must be finite");
  require(finite(coulomb_lambda), "coulomb_lambda must be finite");
  require(finite(opa_phase), "opa_phase must be finite");
  if (coulomb_lambda * coulomb_lambda >= omega_m1 * omega_m2) {
    throw PhysicsError(ErrorCode::degenerate_normal_mode,
                       "coulomb_lambda^2 must be below omega_m1 * omega_m2");
  }
}

double thermal_occupation(double omega_m, double temperature) {
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(constants::hbar * omega_m / (constants::k_b * temperature));
}

double drive_amplitude(double power, double kappa, double omega_L) {
  return std::sqrt(2.0 * kappa * power / (constants::hbar * omega_L));
}

double single_photon_coupling(double omega_c, double cavity_length, double mass, double omega_m) {
  return (omega_c / cavity_length) * std::sqrt(constants::hbar / (mass * omega_m));
}

double coulomb_strength(double c1, double u1, double c2, double u2, double d0) {
  return 2.0 * constants::k_e * c1 * u1 * c2 * u2 / (constants::hbar * d0 * d0 * d0);
}

double laser_angular_frequency(double wavelength) {
  return 2.0 * std::numbers::pi * constants::c_light / wavelength;
}

DerivedQuantities derive_scalars(const SystemParams& p) {
  DerivedQuantities d;
  d.omega_L = laser_angular_frequency(p.laser_wavelength);
  d.omega_c = d.omega_L;
  d.drive_E = drive_amplitude(p.power, p.kappa, d.omega_L);
  d.g0 = single_photon_coupling(d.omega_c, p.cavity_length, p.mass, p.omega_m1);
  d.nbar = thermal_occupation(p.omega_m1, p.temperature);
  d.nbar2 = thermal_occupation(p.omega_m2, p.temperature);
  return d;
}

DerivedQuantities derive(const SystemParams& p) {
  p.validate();
  DerivedQuantities d = derive_scalars(p);

  const SteadyState s = steady_state(p, d.drive_E, d.g0);
  d.c_s = s.c_s;
  d.q1s = s.q1s;
  d.q2s = s.q2s;
  d.g_m = s.g_m;
  return d;
}

}  // namespace omn
