#include "nssing/weak_form.hpp"

#include <cmath>
#include <sstream>

#include "nssing/errors.hpp"

namespace nssing {

TestFunction::TestFunction(const Vec3& center, double a, double b, const Vec3& c)
    : center_(center), cutoff_(a, b), c_(c) {
  if (!(c.norm() > 0.0)) throw DomainError("TestFunction: direction must be nonzero");
}

TestFunction::Radial TestFunction::radial(double rho) const {
  if (rho <= cutoff_.inner()) return {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  if (rho >= cutoff_.outer()) return {};
  const auto [psi, d1, d2, d3] = cutoff_(rho);
  const double r2 = rho * rho;
  return {
      psi + 0.5 * rho * d1,
      1.5 * d1 + 0.5 * rho * d2,
      2.0 * d2 + 0.5 * rho * d3,
      -d1 / (2.0 * rho),
      -d2 / (2.0 * rho) + d1 / (2.0 * r2),
      -d3 / (2.0 * rho) + d2 / r2 - d1 / (r2 * rho),
  };
}

Vec3 TestFunction::value(const Vec3& x) const {
  const Vec3 y = x - center_;
  const Radial f = radial(y.norm());
  return f.alpha * c_ + (f.beta * y.dot(c_)) * y;
}

Mat3 TestFunction::gradient(const Vec3& x) const {
  const Vec3 y = x - center_;
  const double rho = y.norm();
  Mat3 g;
  if (rho <= cutoff_.inner() || rho >= cutoff_.outer()) return g;
  const Radial f = radial(rho);
  const double yc = y.dot(c_);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      g(i, j) = f.dalpha * y[i] / rho * c_[j] + f.dbeta * y[i] / rho * y[j] * yc +
                f.beta * ((i == j ? yc : 0.0) + y[j] * c_[i]);
  return g;
}

Vec3 TestFunction::laplacian(const Vec3& x) const {
  const Vec3 y = x - center_;
  const double rho = y.norm();
  if (rho <= cutoff_.inner() || rho >= cutoff_.outer()) return {};
  const Radial f = radial(rho);
  return (f.d2alpha + 2.0 * f.dalpha / rho + 2.0 * f.beta) * c_ + ((f.d2beta + 6.0 * f.dbeta / rho) * y.dot(c_)) * y;
}

TestFunction make_test_function(const Vec3& center, double a, double b, const Vec3& c) {
  return TestFunction(center, a, b, c);
}

QuadratureRule transition_rule(const TestFunction& phi, BallResolution res) {
  return ball_shell_rule(phi.plateau_radius(), phi.support_radius(), res.n_r, res.sphere, phi.center());
}

double weak_pairing(const SampledField& field, const TestFunction& phi, const QuadratureRule& rule) {
  const auto* shell = std::get_if<BallShellDomain>(&rule.domain());
  if (shell == nullptr || (shell->center - phi.center()).norm() > 1e-14 * (1.0 + phi.center().norm()) ||
      shell->r0 > phi.plateau_radius() || shell->r1 < phi.support_radius())
    throw DomainError("weak_pairing: rule does not cover the test function's transition shell");

  double acc = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Vec3& x = rule.nodes()[k];
    const Vec3 lap = phi.laplacian(x);
    const Mat3 grad = phi.gradient(x);
    if (lap == Vec3{} && grad == Mat3{}) continue;
    const Vec3 u = field.probe(x).u;
    if (!u.is_finite()) {
      std::ostringstream os;
      os << "weak_pairing: non-finite velocity at node " << x;
      throw EvaluationError(os.str());
    }
    // -u . lap(phi) - u_j u_i d_j phi_i
    double quad = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) quad += u[j] * u[i] * grad(j, i);
    acc += rule.weights()[k] * (-u.dot(lap) - quad);
  }
  return acc;
}

WeakResidual weak_residual(const SampledField& field, const TestFunction& phi, const QuadratureRule& rule) {
  WeakResidual out;
  out.pairing = weak_pairing(field, phi, rule);
  const double scale = phi.direction().norm();
  for (std::size_t m = 0; m < 3; ++m) {
    const TestFunction phi_m(phi.center(), phi.plateau_radius(), phi.support_radius(), scale * Vec3::unit(m));
    out.value[m] = weak_pairing(field, phi_m, rule);
  }
  out.nodes = rule.size();
  out.exactness_degree = rule.exactness_degree();
  return out;
}

WeakResidual weak_residual(const SampledField& field, const TestFunction& phi, BallResolution res) {
  return weak_residual(field, phi, transition_rule(phi, res));
}

std::vector<Vec3> delta_limit_probe(const SampledField& field, std::span<const double> epsilons,
                                    SphereResolution res) {
  std::vector<Vec3> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("delta_limit_probe: radii must lie in (0, 1)");
    out.push_back(flux_integral(field, eps, res));
  }
  return out;
}

}  // namespace nssing
