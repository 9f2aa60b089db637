#pragma once

#include <limits>

#include "nssing/flow.hpp"
#include "nssing/vec3.hpp"

namespace nssing {

/// Smallest admissible shape parameter; below this the logarithm in the
/// force/shape relation has no correct digits left in double precision.
inline constexpr double kMinShapeA = 1.0 + 1e-9;

/// One member of the Landau family, identified by its point force b.
///
/// The force magnitude beta = |b| and the shape parameter A are tied by
///   beta = 16 pi (A + A^2/2 log((A-1)/(A+1)) + 4A / (3(A^2-1))).
/// b = 0 is represented by A = +inf, and every field evaluation is zero.
class LandauParams {
 public:
  /// Jet along `axis` (normalized internally) with shape parameter A.
  static LandauParams from_A(double A, const Vec3& axis = Vec3::unit(2));
  static LandauParams from_beta(double beta, const Vec3& axis = Vec3::unit(2));
  static LandauParams from_force(const Vec3& b);
  static LandauParams zero();

  const Vec3& b() const { return b_; }
  double A() const { return A_; }
  double beta() const { return beta_; }
  const Vec3& axis() const { return axis_; }
  bool is_zero() const { return beta_ == 0.0; }

 private:
  LandauParams(const Vec3& b, double A, double beta, const Vec3& axis)
      : b_(b), A_(A), beta_(beta), axis_(axis) {}

  Vec3 b_;
  double A_ = std::numeric_limits<double>::infinity();
  double beta_ = 0.0;
  Vec3 axis_ = Vec3::unit(2);
};

/// Force magnitude for shape parameter A; strictly decreasing on (1, inf).
/// Throws DomainError for A <= kMinShapeA.
double beta_from_A(double A);

/// d beta / dA.
double dbeta_dA(double A);

/// Inverse of beta_from_A: bisection on log(A - 1) followed by Newton polish.
/// Throws DomainError for beta <= 0 or beta beyond beta_from_A(kMinShapeA),
/// ConvergenceError if the bracket does not close in 200 steps.
double A_from_beta(double beta);

/// U^b(x), P^b(x) and the exact gradient of U^b at x != 0.
FlowState landau_eval(const LandauParams& params, const Vec3& x);

/// Exact gradient of P^b at x != 0.
Vec3 landau_pressure_gradient(const LandauParams& params, const Vec3& x);

/// Probe wrapping landau_eval.
FieldProbe landau_probe(const LandauParams& params);

/// -Laplacian u + (u . grad) u + grad p at x, with the Laplacian taken by
/// Richardson-extrapolated central differences (steps h and h/2) of the
/// analytic gradient. Requires |x| > 4h.
Vec3 ns_residual(const LandauParams& params, const Vec3& x, double h);

/// (lambda u(lambda x), lambda^2 p(lambda x), lambda^2 grad u(lambda x)).
FlowState rescale(const FieldProbe& field, double lambda, const Vec3& x);
FlowState rescale(const LandauParams& params, double lambda, const Vec3& x);

/// |U^{Rb}(Rx) - R U^b(x)| for a proper rotation R (checked to 1e-12).
double rotate_equivariance_check(const LandauParams& params, const Mat3& R, const Vec3& x);

/// Max of |U^b| over the unit sphere, sampled on `n_theta` polar angles of a
/// meridian (the field is axisymmetric about b).
double sup_speed_unit_sphere(const LandauParams& params, int n_theta = 2001);

}  // namespace nssing
