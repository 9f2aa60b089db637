#include "nssing/landau_fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nssing/errors.hpp"

namespace nssing {

namespace {

constexpr double kSixteenPi = 16.0 * std::numbers::pi;
constexpr double kMaxBracketA = 1e8;

Vec3 normalized_axis(const Vec3& axis) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("LandauParams: axis must be a nonzero finite vector");
  return axis / n;
}

// For A >= 2 the closed form cancels badly (A and A^2/2 log(...) nearly
// cancel), so we sum the expansion in t = 1/A instead:
//   beta / 16pi = sum_{k>=1} t^{2k-1} (4/3 - 1/(2k+1)),
// which has positive terms and converges geometrically for t <= 1/2.
double beta_series(double A) {
  const double t = 1.0 / A;
  const double t2 = t * t;
  double term = t;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double add = term * (4.0 / 3.0 - 1.0 / (2.0 * k + 1.0));
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= t2;
  }
  return kSixteenPi * sum;
}

double dbeta_series(double A) {
  // d/dA t^{2k-1} = -(2k-1) t^{2k}
  const double t = 1.0 / A;
  const double t2 = t * t;
  double term = t2;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double add = (2.0 * k - 1.0) * term * (4.0 / 3.0 - 1.0 / (2.0 * k + 1.0));
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= t2;
  }
  return -kSixteenPi * sum;
}

void check_shape(double A) {
  if (!(A > kMinShapeA)) throw DomainError("beta_from_A: A must exceed 1 + 1e-9, got " + std::to_string(A));
}

// Coefficients of the canonical-axis closed form in c = cos(theta):
//   U = H(c)/(2r) e_r + G(c)/r axis,   P = H(c)/r^2,
//   H = 4(Ac - 1)/(A - c)^2,  G = 2/(A - c).
struct Profile {
  double H, dH, G, dG;
};

Profile profile(double A, double c) {
  const double d = A - c;
  const double d2 = d * d;
  return {4.0 * (A * c - 1.0) / d2, 4.0 * (A * A + A * c - 2.0) / (d2 * d), 2.0 / d, 2.0 / d2};
}

void require_nonzero_point(const Vec3& x) {
  if (!(x.norm() > 0.0)) throw DomainError("Landau fields are singular at the origin");
}

}  // namespace

LandauParams LandauParams::from_A(double A, const Vec3& axis) {
  const Vec3 a = normalized_axis(axis);
  if (std::isinf(A) && A > 0) return LandauParams(Vec3{}, A, 0.0, a);
  const double beta = beta_from_A(A);
  return LandauParams(beta * a, A, beta, a);
}

LandauParams LandauParams::from_beta(double beta, const Vec3& axis) {
  const Vec3 a = normalized_axis(axis);
  if (beta == 0.0) return LandauParams(Vec3{}, std::numeric_limits<double>::infinity(), 0.0, a);
  const double A = A_from_beta(beta);
  return LandauParams(beta * a, A, beta, a);
}

LandauParams LandauParams::from_force(const Vec3& b) {
  const double beta = b.norm();
  if (beta == 0.0) return zero();
  return from_beta(beta, b);
}

LandauParams LandauParams::zero() {
  return LandauParams(Vec3{}, std::numeric_limits<double>::infinity(), 0.0, Vec3::unit(2));
}

double beta_from_A(double A) {
  if (std::isinf(A) && A > 0) return 0.0;
  check_shape(A);
  if (A >= 2.0) return beta_series(A);
  const double am1 = A - 1.0;
  const double ap1 = A + 1.0;
  return kSixteenPi * (A + 0.5 * A * A * std::log(am1 / ap1) + 4.0 * A / (3.0 * am1 * ap1));
}

double dbeta_dA(double A) {
  check_shape(A);
  if (A >= 2.0) return dbeta_series(A);
  const double am1 = A - 1.0;
  const double ap1 = A + 1.0;
  const double q = am1 * ap1;
  return kSixteenPi * (1.0 + A * std::log(am1 / ap1) + A * A / q - 4.0 * (A * A + 1.0) / (3.0 * q * q));
}

double A_from_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("A_from_beta: beta must be positive and finite");
  const double A_min = std::nextafter(kMinShapeA, 2.0);
  const double beta_max = beta_from_A(A_min);
  if (beta > beta_max) throw DomainError("A_from_beta: beta beyond the representable range (A -> 1)");

  // beta(A) is decreasing, so bracket in s = log(A - 1).
  double lo = std::log(A_min - 1.0);
  double hi = std::log(kMaxBracketA - 1.0);
  while (beta_from_A(1.0 + std::exp(hi)) > beta) {
    hi += std::log(10.0);
    if (hi > 700.0) throw DomainError("A_from_beta: beta too small to resolve");
  }

  constexpr int kMaxIterations = 200;
  int it = 0;
  for (; it < kMaxIterations && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (beta_from_A(1.0 + std::exp(mid)) > beta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (it == kMaxIterations) throw ConvergenceError("A_from_beta: bisection did not converge in 200 iterations");

  const double A_lo = 1.0 + std::exp(lo);
  const double A_hi = 1.0 + std::exp(hi);
  double A = 0.5 * (A_lo + A_hi);
  for (int k = 0; k < 4; ++k) {
    const double step = (beta_from_A(A) - beta) / dbeta_dA(A);
    const double next = A - step;
    if (!(next > kMinShapeA) || !std::isfinite(next)) break;
    A = next;
    if (std::abs(step) <= 1e-16 * A) break;
  }
  return A;
}

FlowState landau_eval(const LandauParams& params, const Vec3& x) {
  require_nonzero_point(x);
  FlowState s;
  if (params.is_zero()) return s;

  const Vec3& a = params.axis();
  const double A = params.A();
  const double r = x.norm();
  const double r2 = r * r;
  const double c = std::clamp(x.dot(a) / r, -1.0, 1.0);
  const auto [H, dH, G, dG] = profile(A, c);
  const double F = 0.5 * H;
  const double dF = 0.5 * dH;

  // u_j = F x_j / r^2 + G a_j / r
  s.u = (F / r2) * x + (G / r) * a;
  s.p = H / r2;

  // d_i c = a_i / r - c x_i / r^2
  const Vec3 dc = a / r - (c / r2) * x;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      s.grad_u(i, j) = dF * dc[i] * x[j] / r2 + F * (delta / r2 - 2.0 * x[i] * x[j] / (r2 * r2)) +
                       dG * dc[i] * a[j] / r - G * a[j] * x[i] / (r2 * r);
    }
  }
  return s;
}

Vec3 landau_pressure_gradient(const LandauParams& params, const Vec3& x) {
  require_nonzero_point(x);
  if (params.is_zero()) return {};
  const Vec3& a = params.axis();
  const double r = x.norm();
  const double r2 = r * r;
  const double c = std::clamp(x.dot(a) / r, -1.0, 1.0);
  const auto prof = profile(params.A(), c);
  const Vec3 dc = a / r - (c / r2) * x;
  return (prof.dH / r2) * dc - (2.0 * prof.H / (r2 * r2)) * x;
}

FieldProbe landau_probe(const LandauParams& params) {
  return [params](const Vec3& x) { return landau_eval(params, x); };
}

FluxTensor flux_tensor(const FlowState& state) {
  if (!state.u.is_finite() || !std::isfinite(state.p) || !std::isfinite(state.grad_u.max_abs()))
    throw DomainError("flux_tensor: non-finite flow state");
  FluxTensor t;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      const double v = (i == j ? state.p : 0.0) + state.u[i] * state.u[j] - state.grad_u(i, j) - state.grad_u(j, i);
      t.t_(i, j) = v;
      t.t_(j, i) = v;
    }
  }
  return t;
}

Vec3 ns_residual(const LandauParams& params, const Vec3& x, double h) {
  if (!(h > 0.0)) throw DomainError("ns_residual: step must be positive");
  if (!(x.norm() > 4.0 * h)) throw DomainError("ns_residual: stencil too close to the origin (need |x| > 4h)");
  if (params.is_zero()) return {};

  // Laplacian u_j = sum_i d_i (d_i u_j), differencing the analytic gradient.
  auto laplacian = [&](double step) {
    Vec3 lap;
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec3 e = step * Vec3::unit(i);
      const Mat3 gp = landau_eval(params, x + e).grad_u;
      const Mat3 gm = landau_eval(params, x - e).grad_u;
      for (std::size_t j = 0; j < 3; ++j) lap[j] += (gp(i, j) - gm(i, j)) / (2.0 * step);
    }
    return lap;
  };
  const Vec3 lap = (4.0 * laplacian(0.5 * h) - laplacian(h)) / 3.0;

  const FlowState s = landau_eval(params, x);
  Vec3 adv;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) adv[j] += s.u[i] * s.grad_u(i, j);
  return -lap + adv + landau_pressure_gradient(params, x);
}

FlowState rescale(const FieldProbe& field, double lambda, const Vec3& x) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("rescale: lambda must be positive");
  FlowState s = field(lambda * x);
  s.u *= lambda;
  s.p *= lambda * lambda;
  s.grad_u *= lambda * lambda;
  return s;
}

FlowState rescale(const LandauParams& params, double lambda, const Vec3& x) {
  require_nonzero_point(x);
  return rescale(landau_probe(params), lambda, x);
}

double rotate_equivariance_check(const LandauParams& params, const Mat3& R, const Vec3& x) {
  const Mat3 rrt = R * R.transpose();
  if ((rrt - Mat3::identity()).max_abs() > 1e-12 || std::abs(R.determinant() - 1.0) > 1e-12)
    throw DomainError("rotate_equivariance_check: matrix is not a proper rotation");
  if (params.is_zero()) return 0.0;
  const LandauParams rotated = LandauParams::from_A(params.A(), R * params.axis());
  const Vec3 lhs = landau_eval(rotated, R * x).u;
  const Vec3 rhs = R * landau_eval(params, x).u;
  return (lhs - rhs).norm();
}

double sup_speed_unit_sphere(const LandauParams& params, int n_theta) {
  if (n_theta < 2) throw DomainError("sup_speed_unit_sphere: need at least 2 samples");
  if (params.is_zero()) return 0.0;
  const Vec3& a = params.axis();
  // Any unit vector orthogonal to the axis spans the meridian plane.
  const Vec3 trial = std::abs(a.x()) < 0.9 ? Vec3::unit(0) : Vec3::unit(1);
  const Vec3 e1 = (trial - trial.dot(a) * a) / (trial - trial.dot(a) * a).norm();
  double sup = 0.0;
  for (int k = 0; k < n_theta; ++k) {
    const double theta = std::numbers::pi * k / (n_theta - 1);
    const Vec3 x = std::cos(theta) * a + std::sin(theta) * e1;
    sup = std::max(sup, landau_eval(params, x).u.norm());
  }
  return sup;
}

}  // namespace nssing
