#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "nssing/errors.hpp"
#include "nssing/norms.hpp"

using namespace nssing;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<WeightedSample> random_samples(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> v(-3.0, 3.0);
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::vector<WeightedSample> out(n);
  for (auto& s : out) s = {v(rng), w(rng)};
  return out;
}

}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("weak-L3 of |x|^-1 on the ball of radius 2") {
    const auto samples = cell_samples([](const Vec3& x) { return 1.0 / x.norm(); }, 0.0, 2.0, 1000, 25, 40);
    CHECK(samples.size() == 1000000);
    const double exact = std::cbrt(4.0 * kPi / 3.0);
    const NormReport r = weak_l3_quasinorm(samples);
    CHECK(r.value == Approx(exact).epsilon(0.02));
    CHECK(r.norm_id == "L^{3,inf}");
    CHECK(r.samples == samples.size());
  }

  TEST_CASE("cell_samples weights add up to the shell volume") {
    const auto s = cell_samples([](const Vec3&) { return 1.0; }, 0.5, 1.5, 7, 5, 9);
    double total = 0.0;
    for (const auto& c : s) total += c.weight;
    CHECK(total == Approx(4.0 * kPi / 3.0 * (1.5 * 1.5 * 1.5 - 0.125)).epsilon(1e-12));
    CHECK_THROWS_AS(cell_samples([](const Vec3&) { return 1.0; }, 1.0, 1.0, 4, 4, 4), DomainError);
    CHECK_THROWS_AS(cell_samples([](const Vec3&) { return 1.0; }, 0.0, 1.0, 0, 4, 4), DomainError);
  }

  TEST_CASE("indicator of the unit ball: L^{3,3} equals L^3") {
    // cells aligned with the jump at |x| = 1
    auto s = cell_samples([](const Vec3&) { return 1.0; }, 0.0, 1.0, 64, 8, 16);
    const auto outside = cell_samples([](const Vec3&) { return 0.0; }, 1.0, 2.0, 16, 8, 16);
    s.insert(s.end(), outside.begin(), outside.end());
    const double l33 = lorentz_quasinorm(s, 3.0, 3.0).value;
    const double l3 = lp_norm(s, 3.0).value;
    CHECK(l33 == Approx(l3).epsilon(1e-3));
    CHECK(l3 == Approx(std::cbrt(4.0 * kPi / 3.0)).epsilon(1e-5));
  }

  TEST_CASE("L^{p,p} equals L^p for arbitrary step functions") {
    std::mt19937_64 rng(4);
    for (double p : {1.5, 2.0, 3.0, 4.5}) {
      const auto s = random_samples(rng, 300);
      CHECK(lorentz_quasinorm(s, p, p).value == Approx(lp_norm(s, p).value).epsilon(1e-12));
    }
  }

  TEST_CASE("hand-computed rearrangements") {
    // values 2 on measure 1, 1 on measure 3
    const std::vector<WeightedSample> s{{1.0, 3.0}, {-2.0, 1.0}};
    CHECK(lorentz_quasinorm(s, 2.0, kInf).value == Approx(std::max(2.0 * 1.0, 1.0 * 2.0)));
    const std::vector<WeightedSample> t{{1.0, 8.0}, {3.0, 1.0}};
    CHECK(weak_l3_quasinorm(t).value == Approx(3.0));
    // L^{3,1}: (p/q) sum v (m_k^{1/3} - m_{k-1}^{1/3}) with p/q = 3
    CHECK(lorentz_quasinorm(t, 3.0, 1.0).value == Approx(3.0 * (3.0 * 1.0 + 1.0 * (std::cbrt(9.0) - 1.0))));
  }

  TEST_CASE("property: homogeneity and permutation invariance") {
    std::mt19937_64 rng(6);
    for (double q : {1.0, 2.0, 3.0, kInf}) {
      auto s = random_samples(rng, 200);
      const double base = lorentz_quasinorm(s, 3.0, q).value;
      auto scaled = s;
      for (auto& x : scaled) x.value *= 5.0;
      CHECK(lorentz_quasinorm(scaled, 3.0, q).value == Approx(5.0 * base).epsilon(1e-14));
      auto neg = s;
      for (auto& x : neg) x.value = -x.value;
      CHECK(lorentz_quasinorm(neg, 3.0, q).value == base);
      std::shuffle(s.begin(), s.end(), rng);
      CHECK(lorentz_quasinorm(s, 3.0, q).value == Approx(base).epsilon(1e-14));
    }
  }

  TEST_CASE("exact homogeneity by a power of two") {
    std::mt19937_64 rng(12);
    const auto s = random_samples(rng, 100);
    auto scaled = s;
    for (auto& x : scaled) x.value *= 4.0;
    CHECK(weak_l3_quasinorm(scaled).value == 4.0 * weak_l3_quasinorm(s).value);
  }

  TEST_CASE("norm domain errors") {
    const std::vector<WeightedSample> s{{1.0, 1.0}};
    CHECK_THROWS_AS(lorentz_quasinorm(s, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(lorentz_quasinorm(s, kInf, 2.0), DomainError);
    CHECK_THROWS_AS(lorentz_quasinorm(s, 3.0, 0.5), DomainError);
    CHECK_THROWS_AS(lorentz_quasinorm(std::vector<WeightedSample>{}, 3.0, 3.0), DomainError);
    CHECK_THROWS_AS(lorentz_quasinorm(std::vector<WeightedSample>{{1.0, 0.0}}, 3.0, 3.0), DomainError);
    CHECK_THROWS_AS(lp_norm(s, 0.5), DomainError);
  }

  TEST_CASE("sobolev_norm closed forms") {
    GridField c = GridField::sample(8, 1.0, {}, [](const Vec3&) { return Vec3(3.0, 0.0, 4.0); });
    CHECK(sobolev_norm(c, 2.0, GridGradient::spectral).value == Approx(5.0).epsilon(1e-12));
    CHECK(sobolev_norm(c, 2.0, GridGradient::central).value == Approx(5.0).epsilon(1e-12));

    GridField z(8, 1.0);
    CHECK(sobolev_norm(z, 2.0, GridGradient::spectral).value == 0.0);

    const double exact = 2.0 * std::sqrt(4.0 * kPi * kPi * kPi);
    auto sine = [](const Vec3& x) { return Vec3(std::sin(x.x()), 0.0, 0.0); };
    const GridField s = GridField::sample(32, 2.0 * kPi, {}, sine);
    const double spec = sobolev_norm(s, 2.0, GridGradient::spectral).value;
    const double cent = sobolev_norm(s, 2.0, GridGradient::central).value;
    CHECK(spec == Approx(exact).epsilon(1e-12));
    CHECK(cent == Approx(spec).epsilon(1e-3));

    CHECK_THROWS_AS(sobolev_norm(GridField(4, 1.0), 2.0, GridGradient::spectral), DomainError);
    CHECK_THROWS_AS(sobolev_norm(s, 3.0, GridGradient::spectral), DomainError);
    CHECK_THROWS_AS(sobolev_norm(s, 1.0, GridGradient::spectral), DomainError);
  }

  TEST_CASE("property: sobolev_norm converges at order >= 2 under refinement") {
    // smooth periodic field with many active modes
    auto f = [](const Vec3& x) {
      return Vec3(std::exp(std::sin(x.y())), std::cos(x.x() + x.z()), std::exp(std::cos(x.x())) * 0.5);
    };
    const double ref = sobolev_norm(GridField::sample(64, 2.0 * kPi, {}, f), 1.5, GridGradient::central).value;
    const double e8 = std::abs(sobolev_norm(GridField::sample(8, 2.0 * kPi, {}, f), 1.5, GridGradient::central).value - ref);
    const double e16 = std::abs(sobolev_norm(GridField::sample(16, 2.0 * kPi, {}, f), 1.5, GridGradient::central).value - ref);
    CHECK(e16 < e8);
    CHECK(std::log2(e8 / e16) >= 2.0);
  }
}
