#pragma once

#include <functional>

#include "nssing/vec3.hpp"

namespace nssing {

/// Velocity, pressure and velocity gradient at one point.
/// grad_u(i, j) holds d_i u_j.
struct FlowState {
  Vec3 u;
  double p = 0.0;
  Mat3 grad_u;

  double divergence() const { return grad_u.trace(); }
};

/// Point evaluation of a flow field (closed-form or sampled).
using FieldProbe = std::function<FlowState(const Vec3&)>;

/// Momentum flux density T_ij = p delta_ij + u_i u_j - d_i u_j - d_j u_i.
/// Only constructible through flux_tensor(), which fills it symmetrically.
class FluxTensor {
 public:
  const Mat3& matrix() const { return t_; }
  double operator()(std::size_t i, std::size_t j) const { return t_(i, j); }
  /// T n, the traction on a surface with normal n.
  Vec3 apply(const Vec3& n) const { return t_ * n; }

 private:
  friend FluxTensor flux_tensor(const FlowState& state);
  Mat3 t_;
};

FluxTensor flux_tensor(const FlowState& state);

}  // namespace nssing
