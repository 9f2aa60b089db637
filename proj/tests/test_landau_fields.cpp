#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "nssing/errors.hpp"
#include "nssing/landau_fields.hpp"
#include "oracles.hpp"

using namespace nssing;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

}  // namespace

TEST_SUITE("landau_fields") {
  TEST_CASE("beta_from_A matches high-precision values") {
    CHECK(rel(beta_from_A(2.0), oracle::kBetaA2) < 1e-14);
    CHECK(rel(beta_from_A(1.5), oracle::kBetaA1_5) < 1e-13);
    CHECK(rel(beta_from_A(3.0), oracle::kBetaA3) < 1e-14);
    CHECK(rel(beta_from_A(5.0), oracle::kBetaA5) < 1e-14);
    CHECK(rel(beta_from_A(10.0), oracle::kBetaA10) < 1e-14);
    CHECK(rel(beta_from_A(1.001), oracle::kBetaA1_001) < 1e-11);
    CHECK(rel(beta_from_A(1e6), oracle::kBetaA1e6) < 1e-13);
  }

  TEST_CASE("beta_from_A agrees with the long double term-by-term oracle") {
    for (double A : {1.2, 1.5, 2.0, 3.0, 7.0}) {
      CAPTURE(A);
      CHECK(rel(beta_from_A(A), static_cast<double>(oracle::beta_long_double(A))) < 1e-12);
    }
  }

  TEST_CASE("beta_from_A asymptotics and domain") {
    const double A = 1e6;
    CHECK(std::abs(beta_from_A(A) - 16.0 * std::numbers::pi / A) < 0.1 * 16.0 * std::numbers::pi / A);
    CHECK_THROWS_AS(beta_from_A(1.0 + 1e-8 * 0.05), DomainError);
    CHECK_THROWS_AS(beta_from_A(1.0), DomainError);
    CHECK_THROWS_AS(beta_from_A(0.5), DomainError);
    CHECK(beta_from_A(std::numeric_limits<double>::infinity()) == 0.0);
  }

  TEST_CASE("A = 1 + 1e-8 sits inside the clamp and is accepted; just below 1 + 1e-9 is not") {
    CHECK(beta_from_A(1.0 + 1e-8) > 0.0);
    CHECK_THROWS_AS(beta_from_A(1.0 + 1e-9), DomainError);
  }

  TEST_CASE("dbeta_dA matches central differences") {
    for (double A : {1.1, 1.9, 2.0, 2.1, 4.0, 50.0}) {
      const double h = 1e-6 * A;
      const double fd = (beta_from_A(A + h) - beta_from_A(A - h)) / (2.0 * h);
      CAPTURE(A);
      CHECK(rel(dbeta_dA(A), fd) < 1e-6);
      CHECK(dbeta_dA(A) < 0.0);
    }
  }

  TEST_CASE("A_from_beta round trips") {
    CHECK(std::abs(A_from_beta(beta_from_A(2.0)) - 2.0) < 1e-9);
    CHECK(std::abs(A_from_beta(beta_from_A(1.001)) - 1.001) < 1e-8);
    CHECK(std::abs(A_from_beta(oracle::kBetaA2) - 2.0) < 1e-9);
    CHECK_THROWS_AS(A_from_beta(0.0), DomainError);
    CHECK_THROWS_AS(A_from_beta(-1.0), DomainError);
    CHECK_THROWS_AS(A_from_beta(1e12), DomainError);
  }

  TEST_CASE("A_from_beta resolves the rounded anchor 34.7624 close to A = 2") {
    CHECK(std::abs(A_from_beta(34.7624) - 2.0) < 1e-3);
  }

  TEST_CASE("property: beta strictly decreasing and round trip over a log grid") {
    const auto As = log_grid(1.0 + 1e-6, 1e6, 400);
    CHECK(beta_from_A(As.front()) > 1e4);
    CHECK(beta_from_A(As.back()) < 1e-3);
    for (std::size_t i = 1; i < As.size(); ++i) CHECK(beta_from_A(As[i]) < beta_from_A(As[i - 1]));

    for (double A : log_grid(1.0 + 1e-6, 1e6, 100)) {
      const double back = A_from_beta(beta_from_A(A));
      CAPTURE(A);
      CHECK(rel(back, A) < 1e-9);
      CHECK(rel(beta_from_A(back), beta_from_A(A)) < 1e-10);
    }
  }

  TEST_CASE("LandauParams invariants") {
    const auto p = LandauParams::from_A(2.0, Vec3(1.0, 2.0, -2.0));
    CHECK(p.beta() == Approx(oracle::kBetaA2).epsilon(1e-14));
    CHECK(p.b().norm() == Approx(p.beta()).epsilon(1e-15));
    CHECK(p.axis().norm() == Approx(1.0).epsilon(1e-15));
    CHECK(p.axis().x() == Approx(1.0 / 3.0));

    const auto q = LandauParams::from_force(Vec3(0.0, 3.0, 4.0));
    CHECK(q.beta() == Approx(5.0));
    CHECK(rel(beta_from_A(q.A()), 5.0) < 1e-10);
    CHECK(q.axis().y() == Approx(0.6));

    const auto z = LandauParams::zero();
    CHECK(z.is_zero());
    CHECK(std::isinf(z.A()));
    CHECK(LandauParams::from_beta(0.0).is_zero());
    CHECK_THROWS_AS(LandauParams::from_A(2.0, Vec3{}), DomainError);
    CHECK_THROWS_AS(Vec3(std::nan(""), 0.0, 0.0), DomainError);
  }

  TEST_CASE("closed form on the axis") {
    const auto p = LandauParams::from_A(2.0);
    for (double r : {0.25, 1.0, 3.0}) {
      const FlowState up = landau_eval(p, Vec3(0.0, 0.0, r));
      CHECK(up.u.x() == Approx(0.0).epsilon(1e-15));
      CHECK(up.u.y() == Approx(0.0).epsilon(1e-15));
      CHECK(up.u.z() == Approx(4.0 / r).epsilon(1e-14));
      CHECK(up.p == Approx(4.0 / (r * r)).epsilon(1e-14));

      // theta = pi: radial component -4/(r(A+1)) along e_r = -e_z
      const FlowState down = landau_eval(p, Vec3(0.0, 0.0, -r));
      CHECK(down.u.dot(Vec3(0.0, 0.0, -1.0)) == Approx(-4.0 / (3.0 * r)).epsilon(1e-14));
      CHECK(down.u.z() == Approx(4.0 / (3.0 * r)).epsilon(1e-14));
      CHECK(down.p == Approx(4.0 * (-2.0 - 1.0) / (r * r * 9.0)).epsilon(1e-14));
    }
  }

  TEST_CASE("zero parameter and origin") {
    const FlowState s = landau_eval(LandauParams::zero(), Vec3(0.3, 0.1, -0.2));
    CHECK(s.u == Vec3{});
    CHECK(s.p == 0.0);
    CHECK(s.grad_u == Mat3{});
    CHECK_THROWS_AS(landau_eval(LandauParams::from_A(2.0), Vec3(0.0, 0.0, 0.0)), DomainError);
  }

  TEST_CASE("property: divergence-free at random points") {
    std::mt19937_64 rng(11);
    for (double A : {1.05, 2.0, 10.0}) {
      const auto p = LandauParams::from_A(A, oracle::random_point(rng, 1.0, 1.0));
      for (int k = 0; k < 1000; ++k) {
        const Vec3 x = oracle::random_point(rng, 1e-3, 5.0);
        const FlowState s = landau_eval(p, x);
        CHECK(std::abs(s.divergence()) <= 1e-9 * s.u.norm() / x.norm());
      }
    }
  }

  TEST_CASE("analytic gradient matches central differences at second order") {
    const auto p = LandauParams::from_A(1.7, Vec3(0.2, -0.5, 1.0));
    const FieldProbe probe = landau_probe(p);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10; ++k) {
      const Vec3 x = oracle::random_point(rng, 0.3, 2.0);
      const Mat3 exact = landau_eval(p, x).grad_u;
      const double e1 = (oracle::fd_gradient(probe, x, 1e-2) - exact).norm();
      const double e2 = (oracle::fd_gradient(probe, x, 5e-3) - exact).norm();
      CAPTURE(x);
      CHECK(e1 / e2 == Approx(4.0).epsilon(0.05));
    }
  }

  TEST_CASE("pressure gradient matches central differences") {
    const auto p = LandauParams::from_A(2.5, Vec3(1.0, 1.0, 0.0));
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
      const Vec3 x = oracle::random_point(rng, 0.3, 2.0);
      Vec3 fd;
      const double h = 1e-5;
      for (std::size_t i = 0; i < 3; ++i)
        fd[i] = (landau_eval(p, x + h * Vec3::unit(i)).p - landau_eval(p, x - h * Vec3::unit(i)).p) / (2 * h);
      CHECK((landau_pressure_gradient(p, x) - fd).norm() < 1e-7 * fd.norm() + 1e-9);
    }
  }

  TEST_CASE("flux_tensor examples and symmetry") {
    FlowState s;
    s.p = 1.0;
    CHECK(flux_tensor(s).matrix() == Mat3::identity());

    FlowState adv;
    adv.u = Vec3(1.0, 0.0, 0.0);
    CHECK(flux_tensor(adv).matrix() == Mat3::diag(1.0, 0.0, 0.0));

    // T_33 = P + U_3^2 - 2 d_3 U_3 with the gradient from finite differences
    const auto p = LandauParams::from_A(2.0);
    const Vec3 x(0.0, 0.0, 1.0);
    const FlowState st = landau_eval(p, x);
    const Mat3 g = oracle::fd_gradient(landau_probe(p), x, 1e-5);
    const double t33 = st.p + st.u.z() * st.u.z() - 2.0 * g(2, 2);
    CHECK(flux_tensor(st)(2, 2) == Approx(t33).epsilon(1e-8));
    CHECK(flux_tensor(st)(2, 2) == Approx(4.0 + 16.0 + 8.0).epsilon(1e-13));

    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
      const Vec3 y = oracle::random_point(rng, 0.1, 2.0);
      const FluxTensor t = flux_tensor(landau_eval(LandauParams::from_A(1.3, Vec3(1, 2, 3)), y));
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(t(i, j) == t(j, i));
    }
  }

  TEST_CASE("property: |T| |x|^2 bounded on 0.01 <= |x| <= 1") {
    const auto p = LandauParams::from_A(2.0, Vec3(0.3, 0.4, 0.5));
    std::mt19937_64 rng(17);
    const Vec3 dir = oracle::random_point(rng, 1.0, 1.0);
    const double ref = flux_tensor(landau_eval(p, dir)).matrix().norm();
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const Vec3 x = oracle::random_point(rng, 0.01, 1.0);
      worst = std::max(worst, flux_tensor(landau_eval(p, x)).matrix().norm() * x.dot(x));
    }
    CHECK(worst < 1e3);
    // exact -2 homogeneity along a ray
    for (double r : {0.01, 0.1, 1.0}) CHECK(flux_tensor(landau_eval(p, r * dir)).matrix().norm() * r * r == Approx(ref).epsilon(1e-12));
  }

  TEST_CASE("ns_residual vanishes away from the origin") {
    const auto p = LandauParams::from_A(2.0);
    CHECK(ns_residual(p, Vec3(0.0, 0.0, 1.0), 1e-3).norm() < 1e-6);
    const Vec3 x = (0.01 / std::sqrt(3.0)) * Vec3(1.0, 1.0, 1.0);
    CHECK(ns_residual(p, x, 1e-5).norm() * std::pow(x.norm(), 3) < 1e-4);
    CHECK(ns_residual(LandauParams::zero(), Vec3(0.2, 0.0, 0.0), 1e-3) == Vec3{});
    CHECK_THROWS_AS(ns_residual(p, Vec3(0.0, 0.0, 0.003), 1e-3), DomainError);
  }

  TEST_CASE("ns_residual sees a non-solution") {
    // Scaling the velocity by 2 breaks the balance between viscous and inertial terms.
    const auto p = LandauParams::from_A(2.0);
    const Vec3 x(0.3, -0.2, 0.9);
    const FlowState s = landau_eval(p, x);
    Vec3 adv;
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) adv[j] += s.u[i] * s.grad_u(i, j);
    // residual(2u) - 2 residual(u) = 2 (u . grad) u  -  grad p, so nonzero
    CHECK(adv.norm() > 1.0);
    CHECK(ns_residual(p, x, 1e-3).norm() < 1e-6 * adv.norm());
  }

  TEST_CASE("rescale is exact for Landau fields") {
    const auto p = LandauParams::from_A(2.0);
    const Vec3 x(0.0, 0.0, 1.0);
    const FlowState base = landau_eval(p, x);
    const FlowState id = rescale(p, 1.0, x);
    CHECK(id.u == base.u);
    CHECK(id.p == base.p);
    CHECK(id.grad_u == base.grad_u);

    const FlowState half = rescale(p, 0.5, x);
    CHECK((half.u - base.u).norm() <= 1e-15 * base.u.norm());
    CHECK(std::abs(half.p - base.p) <= 1e-15 * std::abs(base.p));

    std::mt19937_64 rng(21);
    const auto q = LandauParams::from_A(1.4, Vec3(1.0, -1.0, 0.5));
    for (double lambda : {0.5, 2.0, 10.0})
      for (int k = 0; k < 50; ++k) {
        const Vec3 y = oracle::random_point(rng, 0.05, 2.0);
        const FlowState a = rescale(q, lambda, y);
        const FlowState b = landau_eval(q, y);
        CHECK((a.u - b.u).norm() <= 1e-12 * b.u.norm());
        CHECK(std::abs(a.p - b.p) <= 1e-12 * std::abs(b.p) + 1e-300);
        CHECK((a.grad_u - b.grad_u).norm() <= 1e-12 * b.grad_u.norm());
      }
    CHECK_THROWS_AS(rescale(p, 0.0, x), DomainError);
    CHECK_THROWS_AS(rescale(p, -2.0, x), DomainError);
  }

  TEST_CASE("rescale reports the deviation of a non-homogeneous field") {
    const FieldProbe shear = [](const Vec3& x) {
      FlowState s;
      s.u = Vec3::unchecked(std::sin(x.y()), 0.0, 0.0);
      s.grad_u(1, 0) = std::cos(x.y());
      return s;
    };
    const Vec3 x(0.1, 0.7, 0.2);
    const FlowState scaled = rescale(shear, 2.0, x);
    CHECK(scaled.u.x() == Approx(2.0 * std::sin(1.4)));
    CHECK(std::abs(scaled.u.x() - std::sin(0.7)) > 0.1);
  }

  TEST_CASE("rotation equivariance") {
    const auto p = LandauParams::from_A(2.0);
    CHECK(rotate_equivariance_check(p, Mat3::identity(), Vec3(0.3, -0.2, 0.9)) == 0.0);
    const Mat3 rx = Mat3::rotation(Vec3::unit(0), std::numbers::pi / 2);
    CHECK(rotate_equivariance_check(p, rx, Vec3(0.3, -0.2, 0.9)) <= 1e-10);
    CHECK(rotate_equivariance_check(LandauParams::zero(), rx, Vec3(0.3, -0.2, 0.9)) == 0.0);

    Mat3 reflect = Mat3::diag(1.0, 1.0, -1.0);
    CHECK_THROWS_AS(rotate_equivariance_check(p, reflect, Vec3(1, 0, 0)), DomainError);
    CHECK_THROWS_AS(rotate_equivariance_check(p, 2.0 * Mat3::identity(), Vec3(1, 0, 0)), DomainError);

    std::mt19937_64 rng(31);
    for (int k = 0; k < 200; ++k) {
      const Mat3 R = oracle::random_rotation(rng);
      const Vec3 x = oracle::random_point(rng, 0.2, 2.0);
      CHECK(rotate_equivariance_check(LandauParams::from_A(1.5, Vec3(0.1, 0.2, 0.9)), R, x) <= 1e-10);
    }
  }

  TEST_CASE("sup |U^b| on the unit sphere is nondecreasing in beta") {
    double prev = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double beta = 1.0 + 99.0 * i / 49.0;
      const double sup = sup_speed_unit_sphere(LandauParams::from_beta(beta));
      CHECK(sup >= prev);
      prev = sup;
    }
    // brute force over a full sphere grid for a tilted axis agrees with the meridian scan
    const auto p = LandauParams::from_A(1.8, Vec3(1.0, 1.0, 1.0));
    double brute = 0.0;
    for (int i = 0; i <= 200; ++i)
      for (int j = 0; j < 200; ++j) {
        const double th = std::numbers::pi * i / 200.0;
        const double ph = 2.0 * std::numbers::pi * j / 200.0;
        brute = std::max(brute, landau_eval(p, Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th))).u.norm());
      }
    CHECK(sup_speed_unit_sphere(p) == Approx(brute).epsilon(1e-3));
    CHECK(sup_speed_unit_sphere(p) == Approx(4.0 / 0.8).epsilon(1e-12));
  }
}
