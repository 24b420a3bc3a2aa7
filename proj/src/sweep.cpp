#include "omn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "omn/errors.hpp"

namespace omn {
namespace {

constexpr std::string_view kSuffix = "_in_omega_m";

constexpr std::pair<Param, std::string_view> kParamNames[] = {
    {Param::omega_m1, "omega_m1"},
    {Param::omega_m2, "omega_m2"},
    {Param::gamma_m1, "gamma_m1"},
    {Param::gamma_m2, "gamma_m2"},
    {Param::kappa, "kappa"},
    {Param::mass, "mass"},
    {Param::cavity_length, "cavity_length"},
    {Param::laser_wavelength, "laser_wavelength"},
    {Param::power, "power"},
    {Param::detuning, "detuning"},
    {Param::coulomb_lambda, "coulomb_lambda"},
    {Param::opa_gain, "opa_gain"},
    {Param::opa_phase, "opa_phase"},
    {Param::temperature, "temperature"},
};

}  // namespace

std::string_view param_name(Param p) noexcept {
  for (const auto& [param, name] : kParamNames)
    if (param == p) return name;
  return "unknown";
}

std::string ParamKey::name() const {
  std::string n(param_name(param));
  if (in_omega_m) n += kSuffix;
  return n;
}

ParamKey parse_param_key(std::string_view name) {
  ParamKey key{Param::omega_m1, false};
  if (name.size() > kSuffix.size() && name.ends_with(kSuffix)) {
    name.remove_suffix(kSuffix.size());
    key.in_omega_m = true;
  }
  for (const auto& [param, pname] : kParamNames) {
    if (pname != name) continue;
    key.param = param;
    if (key.in_omega_m && param != Param::detuning && param != Param::coulomb_lambda) {
      throw ConfigError("only detuning and coulomb_lambda accept the _in_omega_m form");
    }
    return key;
  }
  throw ConfigError("unknown parameter: " + std::string(name) + (key.in_omega_m ? std::string(kSuffix) : ""));
}

double& param_ref(SystemParams& p, Param which) {
  switch (which) {
    case Param::omega_m1: return p.omega_m1;
    case Param::omega_m2: return p.omega_m2;
    case Param::gamma_m1: return p.gamma_m1;
    case Param::gamma_m2: return p.gamma_m2;
    case Param::kappa: return p.kappa;
    case Param::mass: return p.mass;
    case Param::cavity_length: return p.cavity_length;
    case Param::laser_wavelength: return p.laser_wavelength;
    case Param::power: return p.power;
    case Param::detuning: return p.detuning;
    case Param::coulomb_lambda: return p.coulomb_lambda;
    case Param::opa_gain: return p.opa_gain;
    case Param::opa_phase: return p.opa_phase;
    case Param::temperature: return p.temperature;
  }
  throw std::logic_error("unhandled parameter");
}

void apply_param(SystemParams& p, const ParamKey& key, double value) {
  param_ref(p, key.param) = key.in_omega_m ? value * p.omega_m1 : value;
}

std::size_t SweepSpec::grid_size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

void SweepSpec::validate() const {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].values.empty()) throw ConfigError("axis " + axes[i].key.name() + " has no values");
    for (std::size_t j = 0; j < i; ++j) {
      if (axes[j].key.param == axes[i].key.param) {
        throw ConfigError("parameter swept twice: " + axes[i].key.name());
      }
    }
  }
}

SystemParams grid_point(const SweepSpec& spec, std::size_t index, std::vector<double>* axis_values) {
  std::vector<double> values(spec.axes.size());
  for (std::size_t a = spec.axes.size(); a-- > 0;) {
    const auto& axis = spec.axes[a];
    values[a] = axis.values[index % axis.values.size()];
    index /= axis.values.size();
  }
  SystemParams p = spec.base;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      if (spec.axes[a].key.in_omega_m == (pass == 1)) apply_param(p, spec.axes[a].key, values[a]);
    }
  }
  if (axis_values != nullptr) *axis_values = std::move(values);
  return p;
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  if (spec.parallel == 0) throw ConfigError("parallel must be >= 1");
  SweepTable table;
  for (const auto& a : spec.axes) table.axis_names.push_back(a.key.name());
  const std::size_t n = spec.grid_size();
  table.rows.resize(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      SweepRow& row = table.rows[i];
      row.result = evaluate_point(grid_point(spec, i, &row.axis_values));
    }
  };
  const std::size_t workers = std::min<std::size_t>(spec.parallel, n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return table;
}

namespace {

void put_double(std::ostream& out, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.write(buf, len);
}

}  // namespace

void write_csv(const SweepTable& table, std::ostream& out) {
  for (const auto& name : table.axis_names) out << name << ',';
  out << "nbar,abs_c_s,q1s,g_m,stable,max_real_part,sigma,varrho,log_negativity,error_code\n";
  for (const auto& row : table.rows) {
    for (double v : row.axis_values) {
      put_double(out, v);
      out << ',';
    }
    const PointResult& r = row.result;
    if (r.derived) put_double(out, r.derived->nbar);
    out << ',';
    if (r.has_steady_state) {
      put_double(out, std::abs(r.derived->c_s));
      out << ',';
      put_double(out, r.derived->q1s);
      out << ',';
      put_double(out, r.derived->g_m);
    } else {
      out << ",,";
    }
    out << ',' << (r.stable() ? '1' : '0') << ',';
    if (r.stability) put_double(out, r.stability->max_real_part);
    out << ',';
    if (r.ok() && r.entanglement) {
      put_double(out, r.entanglement->sigma);
      out << ',';
      put_double(out, r.entanglement->varrho);
      out << ',';
      put_double(out, r.entanglement->log_negativity);
    } else {
      out << ",,";
    }
    out << ',' << static_cast<int>(r.error) << '\n';
  }
}

void write_csv_file(const SweepTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  write_csv(table, out);
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path);
}

namespace {

constexpr std::pair<Figure, std::string_view> kFigureNames[] = {
    {Figure::fig2, "fig2"}, {Figure::fig3, "fig3"}, {Figure::fig4, "fig4"},
    {Figure::fig5a, "fig5a"}, {Figure::fig5b, "fig5b"},
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + step * static_cast<double>(i);
  v.back() = b;
  return v;
}

ParamKey key(Param p, bool in_omega_m = false) { return {p, in_omega_m}; }

double log_negativity_or_zero(const SystemParams& p) {
  const PointResult r = evaluate_point(p);
  return r.ok() ? r.entanglement->log_negativity : 0.0;
}

}  // namespace

Figure parse_figure(std::string_view name) {
  for (const auto& [fig, fname] : kFigureNames)
    if (fname == name) return fig;
  throw ConfigError("unknown figure: " + std::string(name));
}

std::string_view figure_name(Figure f) noexcept {
  for (const auto& [fig, fname] : kFigureNames)
    if (fig == f) return fname;
  return "unknown";
}

std::vector<double> detuning_grid() { return linspace(0.0, 2.0, 401); }

double fig5_temperature_ceiling(const SweepSpec& family) {
  constexpr double kMaxCeiling = 1.0;
  double ceiling = 10e-3;
  auto alive_somewhere = [&](double t) {
    for (std::size_t i = 0; i < family.grid_size(); ++i) {
      SystemParams p = grid_point(family, i);
      p.temperature = t;
      if (log_negativity_or_zero(p) > 0.0) return true;
    }
    return false;
  };
  while (ceiling < kMaxCeiling && alive_somewhere(ceiling)) ceiling = std::min(2.0 * ceiling, kMaxCeiling);
  return ceiling;
}

SweepSpec figure_spec(Figure f) {
  constexpr double pi = std::numbers::pi;
  SweepSpec spec;
  SystemParams& b = spec.base;  // baseline: T = 4 mK, P = 50 mW, lambda = 0.95 omega_m
  switch (f) {
    case Figure::fig2:
      spec.axes = {{key(Param::coulomb_lambda, true), {0.3, 0.5, 0.95}},
                   {key(Param::detuning, true), detuning_grid()}};
      break;
    case Figure::fig3:
      spec.axes = {{key(Param::opa_gain), {0.0, 2e7, 5e7, 8e7, 10e7, 12e7}},
                   {key(Param::detuning, true), detuning_grid()}};
      break;
    case Figure::fig4:
      b.opa_gain = 12e7;
      spec.axes = {{key(Param::opa_phase), {0.0, pi / 16.0, pi / 6.0, pi / 4.0}},
                   {key(Param::detuning, true), detuning_grid()}};
      break;
    case Figure::fig5a:
    case Figure::fig5b: {
      b.detuning = 0.75 * b.omega_m1;
      b.opa_phase = pi / 16.0;
      b.opa_gain = f == Figure::fig5a ? 2e7 : 8e7;
      spec.axes = {{key(Param::power), {30e-3, 50e-3, 80e-3, 100e-3}}};
      const double ceiling = fig5_temperature_ceiling(spec);
      spec.axes.push_back({key(Param::temperature), linspace(1e-3, ceiling, 201)});
      break;
    }
  }
  return spec;
}

SweepTable figure_dataset(Figure f, unsigned parallel) {
  SweepSpec spec = figure_spec(f);
  spec.parallel = parallel;
  return run_sweep(spec);
}

double critical_temperature(const SystemParams& params, double t_lo, double t_hi, double tol) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || !(tol > 0.0)) {
    throw std::invalid_argument("critical_temperature requires 0 < t_lo < t_hi and tol > 0");
  }
  auto en_at = [&](double t) {
    SystemParams p = params;
    p.temperature = t;
    const PointResult r = evaluate_point(p);
    if (!r.ok()) throw PhysicsError(r.error, r.message);
    return r.entanglement->log_negativity;
  };

  if (en_at(t_lo) <= 0.0) {
    throw PhysicsError(ErrorCode::no_entanglement_at_floor, "no entanglement at the lower temperature");
  }
  if (en_at(t_hi) > 0.0) {
    throw PhysicsError(ErrorCode::no_death_below_ceiling, "entanglement survives at the upper temperature");
  }

  constexpr std::size_t kScan = 32;
  const std::vector<double> ts = linspace(t_lo, t_hi, kScan);
  std::size_t last_alive = 0;
  for (std::size_t i = 1; i + 1 < kScan; ++i)
    if (en_at(ts[i]) > 0.0) last_alive = i;

  double lo = ts[last_alive];
  double hi = ts[last_alive + 1];
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (en_at(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

unsigned default_parallelism() {
  if (const char* env = std::getenv("OMN_PARALLEL"); env != nullptr && *env != '\0') {
    unsigned n = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && n > 0) return n;
    throw ConfigError("OMN_PARALLEL must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace omn
