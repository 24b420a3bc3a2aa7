#pragma once
// Physical constants, system parameters and the scalar derivation formulas.
//
// Unit convention: every frequency-like quantity (mechanical frequencies,
// damping, cavity decay, detuning, Coulomb coupling, OPA gain) is an angular
// rate in rad/s == 1/s. "omega_m = 200 pi MHz" therefore means 2*pi*1e8 rad/s.

#include <complex>
#include <numbers>

namespace omn {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_b = 1.380649e-23;          // J/K
inline constexpr double c_light = 299792458.0;       // m/s
inline constexpr double k_e = 8.9875517923e9;        // N m^2 / C^2
}  // namespace constants

struct SystemParams {
  double omega_m1 = 0.0;          // rad/s
  double omega_m2 = 0.0;          // rad/s
  double gamma_m1 = 0.0;          // rad/s
  double gamma_m2 = 0.0;          // rad/s
  double kappa = 0.0;             // 1/s, cavity amplitude decay
  double mass = 0.0;              // kg
  double cavity_length = 0.0;     // m
  double laser_wavelength = 0.0;  // m
  double power = 0.0;             // W
  double detuning = 0.0;          // rad/s, effective detuning
  double coulomb_lambda = 0.0;    // rad/s
  double opa_gain = 0.0;          // 1/s
  double opa_phase = 0.0;         // rad
  double temperature = 0.0;       // K

  /// Experimental baseline: omega_m = 2pi x 100 MHz, gamma_m = 2pi x 100 Hz,
  /// kappa = 8.81e7 1/s, m = 5 ng, L = 1 mm, 810 nm, P = 50 mW, T = 4 mK,
  /// lambda = 0.95 omega_m, Delta = omega_m, OPA off.
  static SystemParams baseline();

  /// Throws PhysicsError(invalid_params) on a sign/positivity violation and
  /// PhysicsError(degenerate_normal_mode) when lambda^2 >= omega_m1 omega_m2.
  void validate() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct DerivedQuantities {
  double omega_c = 0.0;  // rad/s
  double omega_L = 0.0;  // rad/s
  double drive_E = 0.0;  // 1/s
  double g0 = 0.0;       // rad/s
  double nbar = 0.0;     // thermal phonons of oscillator 1
  double nbar2 = 0.0;    // thermal phonons of oscillator 2
  std::complex<double> c_s;
  double q1s = 0.0;
  double q2s = 0.0;
  double g_m = 0.0;  // rad/s

  friend bool operator==(const DerivedQuantities&, const DerivedQuantities&) = default;
};

/// Bose-Einstein occupation; exactly 0 at T = 0.
double thermal_occupation(double omega_m, double temperature);

/// E = sqrt(2 kappa P / (hbar omega_L)).
double drive_amplitude(double power, double kappa, double omega_L);

/// G0 = (omega_c / L) sqrt(hbar / (m omega_m)).
double single_photon_coupling(double omega_c, double cavity_length, double mass, double omega_m);

/// lambda = 2 k_e C1 U1 C2 U2 / (hbar d0^3); sign follows the charge product.
double coulomb_strength(double c1, double u1, double c2, double u2, double d0);

/// 2 pi c / wavelength.
double laser_angular_frequency(double wavelength);

/// Drive, coupling and thermal quantities only; steady-state fields stay zero.
/// Does not validate.
DerivedQuantities derive_scalars(const SystemParams& params);

/// Validates params and evaluates every derived quantity. The cavity
/// frequency is identified with the laser frequency; Delta is an input.
DerivedQuantities derive(const SystemParams& params);

}  // namespace omn
