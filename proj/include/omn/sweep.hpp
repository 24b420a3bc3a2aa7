#pragma once
// Parameter grids, figure datasets and critical-temperature search.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "omn/params.hpp"
#include "omn/pipeline.hpp"

namespace omn {

enum class Param {
  omega_m1,
  omega_m2,
  gamma_m1,
  gamma_m2,
  kappa,
  mass,
  cavity_length,
  laser_wavelength,
  power,
  detuning,
  coulomb_lambda,
  opa_gain,
  opa_phase,
  temperature,
};

/// A schema key: a raw parameter, or one of the *_in_omega_m convenience
/// forms (detuning, coulomb_lambda) expressed in units of omega_m1.
struct ParamKey {
  Param param;
  bool in_omega_m = false;

  std::string name() const;
  friend bool operator==(const ParamKey&, const ParamKey&) = default;
};

/// Throws ConfigError for names outside the schema.
ParamKey parse_param_key(std::string_view name);
std::string_view param_name(Param p) noexcept;

double& param_ref(SystemParams& p, Param which);

/// Applies key = value; *_in_omega_m keys scale by p.omega_m1 as it stands.
void apply_param(SystemParams& p, const ParamKey& key, double value);

struct Axis {
  ParamKey key;
  std::vector<double> values;
};

struct SweepSpec {
  SystemParams base = SystemParams::baseline();
  std::vector<Axis> axes;
  std::string output_path;
  unsigned parallel = 1;

  std::size_t grid_size() const;
  /// Throws ConfigError on empty axes or a parameter swept twice.
  void validate() const;
};

struct SweepRow {
  std::vector<double> axis_values;
  PointResult result;
};

struct SweepTable {
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;
};

/// Parameters of grid point `index` (first axis varies slowest). Raw keys are
/// applied before *_in_omega_m keys so the latter see the point's omega_m1.
SystemParams grid_point(const SweepSpec& spec, std::size_t index, std::vector<double>* axis_values = nullptr);

/// Evaluates every grid point with spec.parallel workers (must be >= 1); rows
/// come back in grid order regardless of the worker count.
SweepTable run_sweep(const SweepSpec& spec);

/// Header line plus one line per row, 17 significant digits, '\n' endings.
void write_csv(const SweepTable& table, std::ostream& out);
/// Throws IoError when the file cannot be written.
void write_csv_file(const SweepTable& table, const std::string& path);

enum class Figure { fig2, fig3, fig4, fig5a, fig5b };

/// Throws ConfigError for unknown names.
Figure parse_figure(std::string_view name);
std::string_view figure_name(Figure f) noexcept;

/// Detuning axis shared by the detuning figures: 401 points over [0, 2] omega_m.
std::vector<double> detuning_grid();

/// Temperature ceiling for a fig5 family: starts at 10 mK and doubles until
/// E_N vanishes for every power of the family (capped at 1 K).
double fig5_temperature_ceiling(const SweepSpec& family_without_temperature);

SweepSpec figure_spec(Figure f);
SweepTable figure_dataset(Figure f, unsigned parallel = 1);

/// Temperature at which E_N drops to zero: 32-point scan on [t_lo, t_hi] to
/// bracket the last sign change, then bisection down to tol.
/// Throws PhysicsError(no_entanglement_at_floor) when E_N(t_lo) = 0,
/// PhysicsError(no_death_below_ceiling) when E_N(t_hi) > 0, or the point's own
/// physics error; std::invalid_argument on a malformed bracket.
double critical_temperature(const SystemParams& params, double t_lo, double t_hi, double tol);

/// Worker count from OMN_PARALLEL, else hardware concurrency (at least 1).
unsigned default_parallelism();

}  // namespace omn
