#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omn {

// Numeric codes are part of the CSV output (error_code column); never renumber.
enum class ErrorCode : int {
  none = 0,
  threshold_singularity = 1,
  degenerate_normal_mode = 2,
  unstable_system = 3,
  singular_solve = 4,
  eigen_failure = 5,
  non_physical_state = 6,
  invalid_params = 7,
  step_too_large = 8,
  no_entanglement_at_floor = 9,
  no_death_below_ceiling = 10,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Physics / numerics failure attached to a single parameter point.
class PhysicsError : public std::runtime_error {
 public:
  PhysicsError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed configuration or CLI input (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written (exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace omn
