#include "omn/errors.hpp"

namespace omn {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::none: return "none";
    case ErrorCode::threshold_singularity: return "ThresholdSingularity";
    case ErrorCode::degenerate_normal_mode: return "DegenerateNormalMode";
    case ErrorCode::unstable_system: return "UnstableSystem";
    case ErrorCode::singular_solve: return "SingularSolve";
    case ErrorCode::eigen_failure: return "EigenFailure";
    case ErrorCode::non_physical_state: return "NonPhysicalState";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::step_too_large: return "StepTooLarge";
    case ErrorCode::no_entanglement_at_floor: return "NoEntanglementAtFloor";
    case ErrorCode::no_death_below_ceiling: return "NoDeathBelowCeiling";
  }
  return "unknown";
}

}  // namespace omn
