#include "omn/pipeline.hpp"

#include "omn/steady_state.hpp"

namespace omn {

PointResult evaluate_point(const SystemParams& params) {
  PointResult r;
  r.params = params;
  auto fail = [&r](const PhysicsError& e) {
    r.error = e.code();
    r.message = e.what();
  };

  try {
    params.validate();
  } catch (const PhysicsError& e) {
    fail(e);
    return r;
  }

  DerivedQuantities d = derive_scalars(params);
  try {
    const SteadyState s = steady_state(params, d.drive_E, d.g0);
    d.c_s = s.c_s;
    d.q1s = s.q1s;
    d.q2s = s.q2s;
    d.g_m = s.g_m;
    r.has_steady_state = true;
  } catch (const PhysicsError& e) {
    fail(e);
  }
  r.derived = d;

  const DriftMatrix drift = build_drift(params, d.g_m);
  try {
    r.stability = stability(drift);
  } catch (const PhysicsError& e) {
    if (r.ok()) fail(e);
    return r;
  }
  if (!r.ok()) return r;
  if (!r.stability->stable) {
    r.error = ErrorCode::unstable_system;
    r.message = "drift matrix is not stable";
    return r;
  }

  try {
    const DiffusionMatrix diffusion = build_diffusion(params, d.nbar, d.nbar2);
    r.covariance = steady_covariance(drift, diffusion);
    r.entanglement = log_negativity(reduce_mechanical(*r.covariance));
  } catch (const PhysicsError& e) {
    fail(e);
  }
  return r;
}

}  // namespace omn
