// omn: steady-state mechanical entanglement in an OPA-assisted optomechanical
// cavity with Coulomb-coupled oscillators.
//
//   omn point [--config FILE] [--set KEY=EXPR ...]
//   omn sweep --config FILE [--out FILE] [--parallel N]
//   omn fig2|fig3|fig4|fig5a|fig5b --out FILE [--parallel N]
//   omn critical-temp --config FILE --t-lo K --t-hi K --tol K
//
// Exit codes: 0 success, 1 configuration/usage error, 2 output error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "omn/config.hpp"
#include "omn/errors.hpp"
#include "omn/pipeline.hpp"
#include "omn/sweep.hpp"

namespace {

using nlohmann::json;

json params_json(const omn::SystemParams& p) {
  json j;
  for (omn::Param k : {omn::Param::omega_m1, omn::Param::omega_m2, omn::Param::gamma_m1,
                       omn::Param::gamma_m2, omn::Param::kappa, omn::Param::mass,
                       omn::Param::cavity_length, omn::Param::laser_wavelength, omn::Param::power,
                       omn::Param::detuning, omn::Param::coulomb_lambda, omn::Param::opa_gain,
                       omn::Param::opa_phase, omn::Param::temperature}) {
    omn::SystemParams copy = p;
    j[std::string(omn::param_name(k))] = omn::param_ref(copy, k);
  }
  return j;
}

json error_json(omn::ErrorCode code, const std::string& message) {
  if (code == omn::ErrorCode::none) return nullptr;
  return {{"code", static_cast<int>(code)}, {"name", std::string(omn::error_name(code))}, {"message", message}};
}

json point_json(const omn::PointResult& r) {
  json j;
  j["params"] = params_json(r.params);
  j["derived"] = nullptr;
  if (r.derived) {
    const auto& d = *r.derived;
    json dj = {{"omega_c", d.omega_c}, {"omega_L", d.omega_L}, {"drive_E", d.drive_E},
               {"g0", d.g0},           {"nbar", d.nbar},       {"nbar2", d.nbar2}};
    if (r.has_steady_state) {
      dj["c_s_re"] = d.c_s.real();
      dj["c_s_im"] = d.c_s.imag();
      dj["abs_c_s"] = std::abs(d.c_s);
      dj["q1s"] = d.q1s;
      dj["q2s"] = d.q2s;
      dj["g_m"] = d.g_m;
    }
    j["derived"] = dj;
  }
  j["stability"] = nullptr;
  if (r.stability) {
    json ev = json::array();
    for (const auto& e : r.stability->eigenvalues) ev.push_back({e.real(), e.imag()});
    j["stability"] = {{"stable", r.stable()}, {"max_real_part", r.stability->max_real_part}, {"eigenvalues", ev}};
  }
  j["entanglement"] = nullptr;
  if (r.ok() && r.entanglement) {
    const auto& e = *r.entanglement;
    j["entanglement"] = {{"sigma", e.sigma}, {"varrho", e.varrho},
                         {"log_negativity", e.log_negativity}, {"entangled", e.entangled}};
  }
  j["error"] = error_json(r.error, r.message);
  return j;
}

omn::SweepSpec spec_from(const std::string& config_path, const std::vector<std::string>& overrides) {
  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw omn::ConfigError("cannot read config file: " + config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  for (const auto& o : overrides) {
    if (o.find('=') == std::string::npos) throw omn::ConfigError("--set expects KEY=EXPR, got " + o);
    std::string line = o;
    if (!line.starts_with("base.")) line = "base." + line;
    text += "\n" + line;
  }
  return omn::parse_config(text);
}

unsigned pick_parallel(std::optional<unsigned> flag, unsigned from_config) {
  if (flag) {
    if (*flag == 0) throw omn::ConfigError("--parallel must be >= 1");
    return *flag;
  }
  if (from_config > 0) return from_config;
  return omn::default_parallelism();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement of Coulomb-coupled oscillators in an OPA optomechanical cavity"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto* point = app.add_subcommand("point", "Evaluate one parameter set and print JSON");
  point->add_option("--config", config_path, "Config file (base.* keys are used)");
  point->add_option("--set", overrides, "Override a base parameter, e.g. --set detuning_in_omega_m=0.9");

  std::string out_path;
  std::optional<unsigned> parallel;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and write CSV");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--out", out_path, "Output CSV (overrides the config's output key)");
  sweep->add_option("--parallel", parallel, "Worker count (default: config, then OMN_PARALLEL)");

  std::vector<std::pair<omn::Figure, CLI::App*>> figures;
  for (omn::Figure f : {omn::Figure::fig2, omn::Figure::fig3, omn::Figure::fig4, omn::Figure::fig5a,
                        omn::Figure::fig5b}) {
    auto* sub = app.add_subcommand(std::string(omn::figure_name(f)), "Write the " +
                                   std::string(omn::figure_name(f)) + " dataset as CSV");
    sub->add_option("--out", out_path, "Output CSV")->required();
    sub->add_option("--parallel", parallel, "Worker count (default: OMN_PARALLEL)");
    figures.emplace_back(f, sub);
  }

  double t_lo = 0.0, t_hi = 0.0, tol = 0.0;
  auto* crit = app.add_subcommand("critical-temp", "Locate the temperature where E_N reaches zero");
  crit->add_option("--config", config_path, "Config file (base.* keys)")->required();
  crit->add_option("--t-lo", t_lo, "Lower temperature bound, K")->required();
  crit->add_option("--t-hi", t_hi, "Upper temperature bound, K")->required();
  crit->add_option("--tol", tol, "Bracket tolerance, K")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (point->parsed()) {
      const omn::SweepSpec spec = spec_from(config_path, overrides);
      if (!spec.axes.empty()) throw omn::ConfigError("point does not accept axes.* keys");
      std::cout << point_json(omn::evaluate_point(spec.base)).dump(2) << '\n';
      return 0;
    }
    if (sweep->parsed()) {
      omn::SweepSpec spec = omn::load_config(config_path);
      if (!out_path.empty()) spec.output_path = out_path;
      if (spec.output_path.empty()) throw omn::ConfigError("no output path: pass --out or set output");
      spec.parallel = pick_parallel(parallel, spec.parallel);
      omn::write_csv_file(omn::run_sweep(spec), spec.output_path);
      return 0;
    }
    for (const auto& [fig, sub] : figures) {
      if (!sub->parsed()) continue;
      const unsigned workers = pick_parallel(parallel, 0);
      omn::write_csv_file(omn::figure_dataset(fig, workers), out_path);
      return 0;
    }
    if (crit->parsed()) {
      const omn::SweepSpec spec = omn::load_config(config_path);
      for (const auto& a : spec.axes) {
        if (a.key.param != omn::Param::temperature) {
          throw omn::ConfigError("critical-temp only accepts base.* keys");
        }
      }
      if (!(t_lo > 0.0) || !(t_hi > t_lo) || !(tol > 0.0)) {
        throw omn::ConfigError("require 0 < --t-lo < --t-hi and --tol > 0");
      }
      json j = {{"params", params_json(spec.base)}, {"t_lo", t_lo}, {"t_hi", t_hi}, {"tol", tol}};
      try {
        j["critical_temperature"] = omn::critical_temperature(spec.base, t_lo, t_hi, tol);
        j["error"] = nullptr;
      } catch (const omn::PhysicsError& e) {
        j["critical_temperature"] = nullptr;
        j["error"] = error_json(e.code(), e.what());
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const omn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const omn::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
