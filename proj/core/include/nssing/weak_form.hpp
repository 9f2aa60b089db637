#pragma once

#include <span>
#include <vector>

#include "nssing/cutoff.hpp"
#include "nssing/geometry_quadrature.hpp"
#include "nssing/vec3.hpp"

namespace nssing {

/// Divergence-free, compactly supported test field
///   phi = curl( psi(|y|) (c x y) / 2 ),  y = x - center,
/// which equals c on the plateau |y| <= a and vanishes for |y| >= b.
/// Expanded, phi = alpha(rho) c + beta(rho) y (y . c) with
/// alpha = psi + rho psi'/2 and beta = -psi'/(2 rho).
class TestFunction {
 public:
  TestFunction(const Vec3& center, double a, double b, const Vec3& c);

  const Vec3& center() const { return center_; }
  double plateau_radius() const { return cutoff_.inner(); }
  double support_radius() const { return cutoff_.outer(); }
  const Vec3& direction() const { return c_; }

  Vec3 value(const Vec3& x) const;
  /// gradient(i, j) = d_i phi_j
  Mat3 gradient(const Vec3& x) const;
  Vec3 laplacian(const Vec3& x) const;

  /// True when x lies on the plateau, where phi == c.
  bool on_plateau(const Vec3& x) const { return (x - center_).norm() <= plateau_radius(); }

 private:
  struct Radial {
    double alpha, dalpha, d2alpha;
    double beta, dbeta, d2beta;
  };
  Radial radial(double rho) const;

  Vec3 center_;
  SepticCutoff cutoff_;
  Vec3 c_;
};

TestFunction make_test_function(const Vec3& center, double a, double b, const Vec3& c);

struct WeakResidual {
  /// Pairing against the supplied test function itself.
  double pairing = 0.0;
  /// value[m] = pairing against the test field of the same geometry with
  /// direction |c| e_m. For a Landau field with the origin on the plateau
  /// this is |c| b.
  Vec3 value;
  std::size_t nodes = 0;
  int exactness_degree = 0;
};

/// Graded shell rule covering exactly the transition region a <= |y| <= b of
/// phi; the pairing integrand is identically zero elsewhere.
QuadratureRule transition_rule(const TestFunction& phi, BallResolution res = {});

/// Quadrature value of  int -u . Laplacian(phi) - u_j u_i d_j phi_i.
/// For a field solving the stationary equations with force f this equals
/// <f, phi>; for a Landau field it is b . phi(0).
/// The rule must be a ball shell around phi's center covering a <= |y| <= b.
double weak_pairing(const SampledField& field, const TestFunction& phi, const QuadratureRule& rule);

/// Pairings against the three test fields sharing phi's geometry with
/// directions e_x, e_y, e_z. When the origin sits on the plateau this
/// recovers the force vector b.
WeakResidual weak_residual(const SampledField& field, const TestFunction& phi, const QuadratureRule& rule);
WeakResidual weak_residual(const SampledField& field, const TestFunction& phi, BallResolution res = {});

/// flux_integral(field, eps) for every eps in (0, 1).
std::vector<Vec3> delta_limit_probe(const SampledField& field, std::span<const double> epsilons,
                                    SphereResolution res = {});

}  // namespace nssing
