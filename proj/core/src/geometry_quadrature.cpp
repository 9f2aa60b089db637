#include "nssing/geometry_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nssing/errors.hpp"

namespace nssing {

namespace {

constexpr double kPi = std::numbers::pi;

double legendre_with_derivative(int n, double x, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  dp = n * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

struct SphereNodes {
  std::vector<Vec3> directions;
  std::vector<double> weights;  // on the unit sphere
};

SphereNodes unit_sphere_nodes(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 4) throw DomainError("sphere rule needs n_theta >= 2 and n_phi >= 4");
  const GaussLegendre gl = gauss_legendre(n_theta);
  SphereNodes out;
  out.directions.reserve(static_cast<std::size_t>(n_theta * n_phi));
  out.weights.reserve(out.directions.capacity());
  const double dphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double c = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = dphi * j;
      out.directions.push_back(Vec3::unchecked(s * std::cos(phi), s * std::sin(phi), c));
      out.weights.push_back(gl.weights[i] * dphi);
    }
  }
  return out;
}

int sphere_degree(int n_theta, int n_phi) { return std::min(2 * n_theta - 1, n_phi - 1); }

std::string node_message(const char* what, const Vec3& x) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at node " << x;
  return os.str();
}

}  // namespace

double domain_measure(const QuadratureDomain& domain) {
  return std::visit(
      [](const auto& d) -> double {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, SphereDomain>) {
          return 4.0 * kPi * d.radius * d.radius;
        } else {
          return 4.0 * kPi / 3.0 * (d.r1 * d.r1 * d.r1 - d.r0 * d.r0 * d.r0);
        }
      },
      domain);
}

QuadratureRule::QuadratureRule(std::vector<Vec3> nodes, std::vector<double> weights, QuadratureDomain domain,
                               int exactness_degree)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), domain_(domain), degree_(exactness_degree) {
  if (nodes_.size() != weights_.size() || nodes_.empty())
    throw DomainError("QuadratureRule: node and weight counts must match and be nonzero");
  if (std::any_of(weights_.begin(), weights_.end(), [](double w) { return !(w > 0.0); }))
    throw DomainError("QuadratureRule: weights must be positive");
}

double QuadratureRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need n >= 1");
  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(n));
  gl.weights.resize(static_cast<std::size_t>(n));
  if (n == 1) {
    gl.nodes[0] = 0.0;
    gl.weights[0] = 2.0;
    return gl;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = legendre_with_derivative(n, x, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre_with_derivative(n, x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // ascending order
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) gl.nodes[n / 2] = 0.0;
  return gl;
}

QuadratureRule sphere_rule(double R, int n_theta, int n_phi, const Vec3& center) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("sphere_rule: radius must be positive");
  SphereNodes unit = unit_sphere_nodes(n_theta, n_phi);
  std::vector<Vec3> nodes;
  nodes.reserve(unit.directions.size());
  for (const Vec3& d : unit.directions) nodes.push_back(center + R * d);
  for (double& w : unit.weights) w *= R * R;
  return QuadratureRule(std::move(nodes), std::move(unit.weights), SphereDomain{R, center},
                        sphere_degree(n_theta, n_phi));
}

QuadratureRule ball_shell_rule(double r0, double r1, int n_r, SphereResolution sphere, const Vec3& center) {
  if (!(r0 >= 0.0) || !(r1 > r0) || !std::isfinite(r1)) throw DomainError("ball_shell_rule: need 0 <= r0 < r1");
  if (n_r < 3) throw DomainError("ball_shell_rule: need n_r >= 3");
  const SphereNodes unit = unit_sphere_nodes(sphere.n_theta, sphere.n_phi);
  const GaussLegendre gl = gauss_legendre(n_r);

  // x = center + s^2 d,  dV = r^2 dr dOmega = 2 s^5 ds dOmega
  const double s0 = std::sqrt(r0);
  const double s1 = std::sqrt(r1);
  const double half = 0.5 * (s1 - s0);
  const double mid = 0.5 * (s1 + s0);

  std::vector<Vec3> nodes;
  std::vector<double> weights;
  nodes.reserve(static_cast<std::size_t>(n_r) * unit.directions.size());
  weights.reserve(nodes.capacity());
  for (int i = 0; i < n_r; ++i) {
    const double s = mid + half * gl.nodes[i];
    const double r = s * s;
    const double radial_w = half * gl.weights[i] * 2.0 * std::pow(s, 5);
    for (std::size_t k = 0; k < unit.directions.size(); ++k) {
      nodes.push_back(center + r * unit.directions[k]);
      weights.push_back(radial_w * unit.weights[k]);
    }
  }
  const int degree = std::min(sphere_degree(sphere.n_theta, sphere.n_phi), n_r - 3);
  return QuadratureRule(std::move(nodes), std::move(weights), BallShellDomain{r0, r1, center}, degree);
}

FlowState SampledField::evaluate(const Vec3& x, double fd_step) const {
  FlowState s = probe(x);
  if (gradient == GradientMode::finite_difference) {
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec3 e = fd_step * Vec3::unit(i);
      const Vec3 up = probe(x + e).u;
      const Vec3 um = probe(x - e).u;
      for (std::size_t j = 0; j < 3; ++j) s.grad_u(i, j) = (up[j] - um[j]) / (2.0 * fd_step);
    }
  }
  return s;
}

SampledField sampled(const LandauParams& params) { return {landau_probe(params), GradientMode::analytic}; }

namespace {

GradientMode combined_mode(const SampledField& a, const SampledField& b) {
  return a.gradient == GradientMode::analytic && b.gradient == GradientMode::analytic
             ? GradientMode::analytic
             : GradientMode::finite_difference;
}

}  // namespace

SampledField operator+(const SampledField& a, const SampledField& b) {
  FieldProbe pa = a.probe;
  FieldProbe pb = b.probe;
  return {[pa, pb](const Vec3& x) {
            FlowState sa = pa(x);
            const FlowState sb = pb(x);
            sa.u += sb.u;
            sa.p += sb.p;
            sa.grad_u += sb.grad_u;
            return sa;
          },
          combined_mode(a, b)};
}

SampledField operator-(const SampledField& a, const SampledField& b) {
  FieldProbe pa = a.probe;
  FieldProbe pb = b.probe;
  return {[pa, pb](const Vec3& x) {
            FlowState sa = pa(x);
            const FlowState sb = pb(x);
            sa.u -= sb.u;
            sa.p -= sb.p;
            sa.grad_u -= sb.grad_u;
            return sa;
          },
          combined_mode(a, b)};
}

Vec3 flux_integral(const SampledField& field, double R, SphereResolution res) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("flux_integral: radius must be positive");
  const QuadratureRule rule = sphere_rule(R, res.n_theta, res.n_phi);
  const double h = R * 1e-5;
  Vec3 b;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Vec3& x = rule.nodes()[k];
    FlowState s;
    try {
      s = field.evaluate(x, h);
    } catch (const std::exception& e) {
      throw EvaluationError(node_message((std::string("flux_integral: probe failed (") + e.what() + ")").c_str(), x));
    }
    if (!s.u.is_finite() || !std::isfinite(s.p) || !std::isfinite(s.grad_u.max_abs()))
      throw EvaluationError(node_message("flux_integral: non-finite field value", x));
    b += rule.weights()[k] * flux_tensor(s).apply(x / R);
  }
  return b;
}

DecayReport decay_report(const SampledField& field, const LandauParams& reference, double q,
                         std::span<const double> shells, SphereResolution res) {
  if (!(q > 1.0 && q < 3.0)) throw DomainError("decay_report: q must lie in (1, 3)");
  if (shells.empty()) throw DomainError("decay_report: no shells given");
  for (double R : shells)
    if (!(R > 0.0 && R <= 1.0)) throw DomainError("decay_report: shell radius outside (0, 1]");

  DecayReport out;
  const double exponent = 3.0 / q - 1.0;
  std::size_t samples = 0;
  for (double R : shells) {
    const QuadratureRule rule = sphere_rule(R, res.n_theta, res.n_phi);
    double sup = 0.0;
    for (const Vec3& x : rule.nodes()) {
      const Vec3 diff = field.probe(x).u - landau_eval(reference, x).u;
      sup = std::max(sup, diff.norm());
    }
    samples += rule.size();
    out.radii.push_back(R);
    out.weighted_sup.push_back(std::pow(R, exponent) * sup);
  }
  out.norm.value = *std::max_element(out.weighted_sup.begin(), out.weighted_sup.end());
  std::ostringstream id;
  id << "sup |x|^{3/q-1} |u - U^b|, q=" << q;
  out.norm.norm_id = id.str();
  out.norm.samples = samples;
  std::ostringstream resolution;
  resolution << shells.size() << " shells x sphere(" << res.n_theta << "x" << res.n_phi << ")";
  out.norm.resolution = resolution.str();
  return out;
}

}  // namespace nssing
