#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nssing/flow.hpp"
#include "nssing/landau_fields.hpp"
#include "nssing/norms.hpp"
#include "nssing/vec3.hpp"

namespace nssing {

struct SphereDomain {
  double radius = 1.0;
  Vec3 center;
};

struct BallShellDomain {
  double r0 = 0.0;
  double r1 = 1.0;
  Vec3 center;
};

using QuadratureDomain = std::variant<SphereDomain, BallShellDomain>;

/// Exact surface area or volume of a domain.
double domain_measure(const QuadratureDomain& domain);

/// Immutable set of nodes and positive weights on a sphere or ball shell.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<Vec3> nodes, std::vector<double> weights, QuadratureDomain domain,
                 int exactness_degree);

  std::span<const Vec3> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  const QuadratureDomain& domain() const { return domain_; }
  int exactness_degree() const { return degree_; }
  std::size_t size() const { return nodes_.size(); }
  double measure() const { return domain_measure(domain_); }
  double weight_sum() const;

  /// Sum of w_k f(x_k); f may return double or Vec3.
  template <class F>
  auto integrate(F&& f) const {
    using R = std::decay_t<decltype(f(nodes_.front()))>;
    R acc{};
    for (std::size_t k = 0; k < nodes_.size(); ++k) acc += weights_[k] * f(nodes_[k]);
    return acc;
  }

 private:
  std::vector<Vec3> nodes_;
  std::vector<double> weights_;
  QuadratureDomain domain_;
  int degree_;
};

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussLegendre gauss_legendre(int n);

struct SphereResolution {
  int n_theta = 64;
  int n_phi = 128;
};

struct BallResolution {
  int n_r = 32;
  SphereResolution sphere{};
};

/// Gauss-Legendre in cos(theta) times the periodic trapezoid in phi.
/// Exact for spherical polynomials of degree <= min(2 n_theta - 1, n_phi - 1).
QuadratureRule sphere_rule(double R, int n_theta, int n_phi, const Vec3& center = {});

/// Shell r0 <= |x - center| <= r1. Radial Gauss-Legendre in s with r = s^2,
/// so that r^-1 and r^-2 integrands become polynomial in s.
QuadratureRule ball_shell_rule(double r0, double r1, int n_r, SphereResolution sphere,
                               const Vec3& center = {});

enum class GradientMode { analytic, finite_difference };

/// A flow field paired with how its gradient is obtained. In
/// finite-difference mode only u and p of the probe are used and the
/// gradient is rebuilt by central differences.
struct SampledField {
  FieldProbe probe;
  GradientMode gradient = GradientMode::analytic;

  FlowState evaluate(const Vec3& x, double fd_step) const;
};

SampledField sampled(const LandauParams& params);
/// Pointwise sum (u, p and grad u add); gradient mode is analytic only if both are.
SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);

/// b_i = sum_k w_k T_ij(x_k) n_j(x_k) on |x| = R. Finite-difference
/// gradients use h = R * 1e-5. Throws EvaluationError naming the node if
/// the probe fails or returns non-finite data.
Vec3 flux_integral(const SampledField& field, double R, SphereResolution res = {});

struct DecayReport {
  NormReport norm;
  std::vector<double> radii;
  std::vector<double> weighted_sup;  ///< R^{3/q-1} sup_{|x|=R} |u - U^b|, per shell
};

/// max over shells of R^{3/q-1} sup_{|x|=R} |u - U^b|, with q in (1, 3)
/// and every radius in (0, 1].
DecayReport decay_report(const SampledField& field, const LandauParams& reference, double q,
                         std::span<const double> shells, SphereResolution res = {});

}  // namespace nssing
