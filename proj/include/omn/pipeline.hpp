#pragma once
// End-to-end evaluation of one parameter point. Physics failures are captured
// in the result, never thrown.

#include <optional>
#include <string>

#include "omn/entanglement.hpp"
#include "omn/errors.hpp"
#include "omn/linear_dynamics.hpp"
#include "omn/params.hpp"

namespace omn {

struct PointResult {
  SystemParams params;
  std::optional<DerivedQuantities> derived;  // scalars always present once params are valid
  bool has_steady_state = false;             // c_s, q1s, q2s, g_m valid
  std::optional<StabilityReport> stability;
  std::optional<CovarianceMatrix> covariance;
  std::optional<EntanglementResult> entanglement;
  ErrorCode error = ErrorCode::none;
  std::string message;

  bool ok() const noexcept { return error == ErrorCode::none; }
  bool stable() const noexcept { return stability && stability->stable && error != ErrorCode::threshold_singularity; }
};

/// derive -> drift/diffusion -> stability -> Lyapunov -> reduce -> E_N.
/// Above the OPA threshold the drift is still built (with g_m = 0) so the
/// stability columns can be reported.
PointResult evaluate_point(const SystemParams& params);

}  // namespace omn
