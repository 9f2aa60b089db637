#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nssing/vec3.hpp"

namespace nssing {

struct NormReport {
  double value = 0.0;
  std::string norm_id;     ///< e.g. "L^{3,inf}", "L^2", "W^{1,2}"
  std::size_t samples = 0;
  std::string resolution;  ///< free-form description of the sampling
};

/// One sample of |f| together with the measure of the cell it represents.
struct WeightedSample {
  double value = 0.0;
  double weight = 0.0;
};

/// Lorentz L^{p,q} quasinorm of the step function defined by the samples,
/// via its decreasing rearrangement f*:
///   q < inf:  ( int_0^inf (t^{1/p} f*(t))^q dt/t )^{1/q}
///   q = inf:  sup_t t mu(|f| > t)^{1/p}, taken at the sample thresholds.
/// With this normalization L^{p,p} coincides with L^p.
NormReport lorentz_quasinorm(std::span<const WeightedSample> samples, double p, double q);

/// Weak-L^3 quasinorm, L^{3,inf}.
NormReport weak_l3_quasinorm(std::span<const WeightedSample> samples);

/// Plain L^p norm (sum w |v|^p)^{1/p}.
NormReport lp_norm(std::span<const WeightedSample> samples, double p);

/// Midpoint-cell samples of f on the shell r0 <= |x| <= r1: n_r radial
/// cells, geometrically graded, times an n_theta x n_phi equal-area angular
/// partition. Each sample sits at the volume midpoint of its cell and
/// carries the cell volume. For r0 = 0 the core ball |x| < 1e-6 r1 is left
/// out, since no single sample can represent an r^-1 singularity there.
std::vector<WeightedSample> cell_samples(const std::function<double(const Vec3&)>& f, double r0,
                                         double r1, int n_r, int n_theta, int n_phi);

/// Vector field on a uniform periodic grid over the cube [origin, origin + L)^3.
/// Component c at (i, j, k) lives at index (i * N + j) * N + k of component c.
class GridField {
 public:
  GridField(std::size_t n, double length, const Vec3& origin = {});

  /// Samples f at the grid points.
  static GridField sample(std::size_t n, double length, const Vec3& origin,
                          const std::function<Vec3(const Vec3&)>& f);

  std::size_t n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  const Vec3& origin() const { return origin_; }
  std::size_t points() const { return n_ * n_ * n_; }
  Vec3 point(std::size_t i, std::size_t j, std::size_t k) const;

  std::span<double> component(std::size_t c) { return data_[c]; }
  std::span<const double> component(std::size_t c) const { return data_[c]; }

 private:
  std::size_t n_;
  double length_;
  Vec3 origin_;
  std::vector<double> data_[3];
};

enum class GridGradient { spectral, central };

/// Discrete ||f||_{L^r} + ||grad f||_{L^r} on the periodic cube, with the
/// gradient taken spectrally or by fourth-order central differences.
/// Pointwise magnitudes are Euclidean (vector) and Frobenius (gradient).
NormReport sobolev_norm(const GridField& field, double r, GridGradient mode);

}  // namespace nssing
