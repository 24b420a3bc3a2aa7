#pragma once
// Logarithmic negativity of the two mechanical oscillators.

#include "omn/linear_dynamics.hpp"
#include "omn/smallmat.hpp"

namespace omn {

/// Mechanical 4x4 block [[phi1, phi3], [phi3^T, phi2]] of the full covariance.
struct ReducedCovariance {
  Mat phi1 = Mat(2, 2);
  Mat phi2 = Mat(2, 2);
  Mat phi3 = Mat(2, 2);

  Mat assembled() const;
};

struct EntanglementResult {
  double sigma = 0.0;
  double varrho = 0.0;  // smallest partially-transposed symplectic eigenvalue
  double log_negativity = 0.0;
  bool entangled = false;
};

ReducedCovariance reduce_mechanical(const CovarianceMatrix& cov);

/// E_N = max(0, -ln(2 varrho)) with
///   Sigma  = det phi1 + det phi2 - 2 det phi3
///   varrho = sqrt((Sigma - sqrt(Sigma^2 - 4 det V)) / 2).
/// Radicands in [-eps, 0), eps = 1e-12 max(1, Sigma^2), are clamped to zero;
/// anything more negative throws PhysicsError(non_physical_state).
EntanglementResult log_negativity(const ReducedCovariance& r);

}  // namespace omn
