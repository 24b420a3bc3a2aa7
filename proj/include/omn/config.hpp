#pragma once
// Flat key = value sweep configuration.
//
//   # comment
//   base.power = 80e-3
//   base.coulomb_lambda_in_omega_m = 0.95
//   axes.detuning = linspace(0, 2, 401) * omega_m1
//   axes.opa_phase = list(0, pi/16, pi/6, pi/4)
//   output = fig.csv
//   parallel = 4
//
// Values are arithmetic expressions (+ - * / parentheses) over numbers, the
// names pi, omega_m1 and omega_m2 (the base values), and the vector literals
// linspace(a, b, n) and list(...). Scalars broadcast against vectors.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "omn/sweep.hpp"

namespace omn {

using ExprEnv = std::map<std::string, double, std::less<>>;

/// Throws ConfigError on syntax errors, unknown names or length mismatches.
std::vector<double> evaluate_expression(std::string_view text, const ExprEnv& env);

/// Keys missing from the text keep their baseline values; parallel is 0 when
/// not given. Throws ConfigError.
SweepSpec parse_config(std::string_view text);

/// Throws ConfigError if the file cannot be read or parsed.
SweepSpec load_config(const std::string& path);

}  // namespace omn
