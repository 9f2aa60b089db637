#include "nssing/norms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "nssing/errors.hpp"
#include "nssing/fft.hpp"

namespace nssing {

namespace {

void check_samples(std::span<const WeightedSample> samples) {
  if (samples.empty()) throw DomainError("norm: no samples");
  for (const auto& s : samples)
    if (!(s.weight > 0.0) || !std::isfinite(s.value)) throw DomainError("norm: weights must be positive and values finite");
}

// Neumaier compensated sum; the rearrangement sums run over ~1e6 terms of
// widely varying size.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::string exponent_text(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

NormReport lorentz_quasinorm(std::span<const WeightedSample> samples, double p, double q) {
  if (!(p > 1.0) || std::isinf(p)) throw DomainError("lorentz_quasinorm: p must lie in (1, inf)");
  if (!(q >= 1.0)) throw DomainError("lorentz_quasinorm: q must lie in [1, inf]");
  check_samples(samples);

  std::vector<WeightedSample> sorted(samples.begin(), samples.end());
  for (auto& s : sorted) s.value = std::abs(s.value);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const WeightedSample& a, const WeightedSample& b) { return a.value > b.value; });

  NormReport report;
  report.norm_id = "L^{" + exponent_text(p) + "," + exponent_text(q) + "}";
  report.samples = samples.size();
  report.resolution = std::to_string(samples.size()) + " weighted samples";

  CompensatedSum mass;
  if (std::isinf(q)) {
    // f* = v_k on [m_{k-1}, m_k): sup of t^{1/p} f*(t) is approached at m_k.
    double sup = 0.0;
    for (const auto& s : sorted) {
      mass.add(s.weight);
      sup = std::max(sup, s.value * std::pow(mass.value(), 1.0 / p));
    }
    report.value = sup;
    return report;
  }

  const double a = q / p;
  CompensatedSum acc;
  double prev = 0.0;
  for (const auto& s : sorted) {
    mass.add(s.weight);
    const double cur = std::pow(mass.value(), a);
    acc.add(std::pow(s.value, q) * (cur - prev));
    prev = cur;
  }
  report.value = std::pow(acc.value() / a, 1.0 / q);
  return report;
}

NormReport weak_l3_quasinorm(std::span<const WeightedSample> samples) {
  return lorentz_quasinorm(samples, 3.0, std::numeric_limits<double>::infinity());
}

NormReport lp_norm(std::span<const WeightedSample> samples, double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("lp_norm: p must lie in [1, inf)");
  check_samples(samples);
  CompensatedSum acc;
  for (const auto& s : samples) acc.add(s.weight * std::pow(std::abs(s.value), p));
  NormReport report;
  report.value = std::pow(acc.value(), 1.0 / p);
  report.norm_id = "L^" + exponent_text(p);
  report.samples = samples.size();
  report.resolution = std::to_string(samples.size()) + " weighted samples";
  return report;
}

std::vector<WeightedSample> cell_samples(const std::function<double(const Vec3&)>& f, double r0, double r1,
                                         int n_r, int n_theta, int n_phi) {
  if (!(r0 >= 0.0) || !(r1 > r0)) throw DomainError("cell_samples: need 0 <= r0 < r1");
  if (n_r < 1 || n_theta < 1 || n_phi < 1) throw DomainError("cell_samples: resolution must be positive");
  const double start = r0 > 0.0 ? r0 : 1e-6 * r1;
  const double ratio = std::pow(r1 / start, 1.0 / n_r);
  const double dcos = 2.0 / n_theta;
  const double dphi = 2.0 * std::numbers::pi / n_phi;

  std::vector<WeightedSample> out;
  out.reserve(static_cast<std::size_t>(n_r) * n_theta * n_phi);
  double lo = start;
  for (int i = 0; i < n_r; ++i) {
    const double hi = i + 1 == n_r ? r1 : lo * ratio;
    const double lo3 = lo * lo * lo;
    const double hi3 = hi * hi * hi;
    const double r = std::cbrt(0.5 * (lo3 + hi3));
    const double shell = (hi3 - lo3) / 3.0;
    for (int a = 0; a < n_theta; ++a) {
      const double c = -1.0 + dcos * (a + 0.5);
      const double s = std::sqrt(1.0 - c * c);
      for (int b = 0; b < n_phi; ++b) {
        const double phi = dphi * (b + 0.5);
        const Vec3 x = Vec3::unchecked(r * s * std::cos(phi), r * s * std::sin(phi), r * c);
        out.push_back({f(x), shell * dcos * dphi});
      }
    }
    lo = hi;
  }
  return out;
}

GridField::GridField(std::size_t n, double length, const Vec3& origin) : n_(n), length_(length), origin_(origin) {
  if (n < 2) throw DomainError("GridField: need at least 2 points per axis");
  if (!(length > 0.0)) throw DomainError("GridField: side length must be positive");
  for (auto& c : data_) c.assign(points(), 0.0);
}

GridField GridField::sample(std::size_t n, double length, const Vec3& origin,
                            const std::function<Vec3(const Vec3&)>& f) {
  GridField g(n, length, origin);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec3 v = f(g.point(i, j, k));
        const std::size_t idx = (i * n + j) * n + k;
        for (std::size_t c = 0; c < 3; ++c) g.data_[c][idx] = v[c];
      }
  return g;
}

Vec3 GridField::point(std::size_t i, std::size_t j, std::size_t k) const {
  const double h = spacing();
  return origin_ + Vec3::unchecked(h * static_cast<double>(i), h * static_cast<double>(j), h * static_cast<double>(k));
}

namespace {

// d/dx_axis of a periodic scalar grid, fourth-order central differences.
std::vector<double> central_derivative(std::span<const double> f, std::size_t n, double h, std::size_t axis) {
  std::vector<double> d(f.size());
  auto wrap = [n](std::size_t i, long off) {
    return static_cast<std::size_t>((static_cast<long>(i) + off + static_cast<long>(n)) % static_cast<long>(n));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t idx[3] = {i, j, k};
        auto at = [&](long off) {
          std::size_t q[3] = {idx[0], idx[1], idx[2]};
          q[axis] = wrap(q[axis], off);
          return f[(q[0] * n + q[1]) * n + q[2]];
        };
        d[(i * n + j) * n + k] = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
      }
  return d;
}

std::vector<double> spectral_derivative(const Fft3d& fft, std::span<const double> f, double length,
                                        std::size_t axis) {
  const std::size_t n = fft.n();
  std::vector<std::complex<double>> buf(f.begin(), f.end());
  fft.forward(buf);
  const double k0 = 2.0 * std::numbers::pi / length;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx[3] = {i, j, k};
        auto& v = buf[(i * n + j) * n + k];
        if (is_nyquist(idx[axis], n)) {
          v = 0.0;
        } else {
          v *= std::complex<double>(0.0, k0 * static_cast<double>(mode_number(idx[axis], n)));
        }
      }
  fft.inverse(buf);
  std::vector<double> d(f.size());
  for (std::size_t m = 0; m < d.size(); ++m) d[m] = buf[m].real();
  return d;
}

}  // namespace

NormReport sobolev_norm(const GridField& field, double r, GridGradient mode) {
  if (!(r > 1.0 && r < 3.0)) throw DomainError("sobolev_norm: r must lie in (1, 3)");
  if (field.n() < 8) throw DomainError("sobolev_norm: grid too small (need at least 8^3)");
  const std::size_t n = field.n();
  const std::size_t np = field.points();
  const double h = field.spacing();
  const double cell = h * h * h;

  std::vector<double> grad_sq(np, 0.0);
  std::vector<double> val_sq(np, 0.0);
  std::unique_ptr<Fft3d> fft;
  if (mode == GridGradient::spectral) fft = std::make_unique<Fft3d>(n);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto comp = field.component(c);
    for (std::size_t m = 0; m < np; ++m) val_sq[m] += comp[m] * comp[m];
    for (std::size_t axis = 0; axis < 3; ++axis) {
      const std::vector<double> d = mode == GridGradient::spectral
                                        ? spectral_derivative(*fft, comp, field.length(), axis)
                                        : central_derivative(comp, n, h, axis);
      for (std::size_t m = 0; m < np; ++m) grad_sq[m] += d[m] * d[m];
    }
  }
  double lr = 0.0;
  double gr = 0.0;
  for (std::size_t m = 0; m < np; ++m) {
    lr += std::pow(val_sq[m], 0.5 * r);
    gr += std::pow(grad_sq[m], 0.5 * r);
  }
  NormReport report;
  report.value = std::pow(lr * cell, 1.0 / r) + std::pow(gr * cell, 1.0 / r);
  report.norm_id = "W^{1," + exponent_text(r) + "}";
  report.samples = np;
  report.resolution = std::to_string(n) + "^3 periodic grid, " +
                      (mode == GridGradient::spectral ? "spectral" : "4th-order central") + " gradient";
  return report;
}

}  // namespace nssing
