#include "omn/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "omn/errors.hpp"

namespace omn {

Mat ReducedCovariance::assembled() const {
  Mat v(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      v(i, j) = phi1(i, j);
      v(i + 2, j + 2) = phi2(i, j);
      v(i, j + 2) = phi3(i, j);
      v(j + 2, i) = phi3(i, j);
    }
  return v;
}

ReducedCovariance reduce_mechanical(const CovarianceMatrix& cov) {
  if (cov.v.rows() < 4 || cov.v.cols() < 4) {
    throw std::invalid_argument("covariance matrix must contain both mechanical modes");
  }
  return {cov.v.block(0, 0, 2, 2), cov.v.block(2, 2, 2, 2), cov.v.block(0, 2, 2, 2)};
}

EntanglementResult log_negativity(const ReducedCovariance& r) {
  EntanglementResult out;
  out.sigma = det(r.phi1) + det(r.phi2) - 2.0 * det(r.phi3);
  const double det_v = det(r.assembled());
  const double eps = 1e-12 * std::max(1.0, out.sigma * out.sigma);

  double outer = out.sigma * out.sigma - 4.0 * det_v;
  if (!(outer >= -eps)) {
    throw PhysicsError(ErrorCode::non_physical_state, "Sigma^2 - 4 det V is negative");
  }
  outer = std::max(outer, 0.0);
  double inner = out.sigma - std::sqrt(outer);
  if (!(inner >= -eps)) {
    throw PhysicsError(ErrorCode::non_physical_state, "symplectic eigenvalue radicand is negative");
  }
  inner = std::max(inner, 0.0);
  out.varrho = std::sqrt(0.5 * inner);
  if (out.varrho == 0.0) {
    throw PhysicsError(ErrorCode::non_physical_state, "vanishing symplectic eigenvalue");
  }
  out.log_negativity = std::max(0.0, -std::log(2.0 * out.varrho));
  out.entangled = out.log_negativity > 0.0;
  return out;
}

}  // namespace omn
