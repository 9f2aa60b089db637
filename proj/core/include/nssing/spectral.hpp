#pragma once

#include <array>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "nssing/fft.hpp"
#include "nssing/norms.hpp"
#include "nssing/vec3.hpp"

namespace nssing {

/// Periodic cube [-L/2, L/2)^3 sampled on N^3 points, with wavenumbers
/// k = (2 pi / L) m. The default side 4 pi contains the ball of radius 2.
class SpectralGrid {
 public:
  static constexpr double kDefaultLength = 4.0 * std::numbers::pi;

  explicit SpectralGrid(std::size_t n, double length = kDefaultLength);

  std::size_t n() const { return fft_.n(); }
  std::size_t size() const { return fft_.size(); }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n()); }
  const Fft3d& fft() const { return fft_; }

  Vec3 point(std::size_t i, std::size_t j, std::size_t k) const;
  /// Wavevector of the mode at flat index idx; the Nyquist components are
  /// reported as -N/2 * k0.
  Vec3 wavevector(std::size_t idx) const;
  /// True when any axis of idx is the unpaired Nyquist mode.
  bool has_nyquist(std::size_t idx) const;
  /// Two-thirds rule: every |m_axis| < N/3.
  bool dealias_keep(std::size_t idx) const;

 private:
  double length_;
  Fft3d fft_;
};

/// Fourier coefficients (forward FFT of the grid samples, unnormalized) of a
/// 3-vector field on a SpectralGrid.
struct SpectralField {
  std::array<std::vector<std::complex<double>>, 3> c;

  static SpectralField zero(const SpectralGrid& grid);
  std::size_t size() const { return c[0].size(); }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
};

using PhysicalField = std::array<std::vector<double>, 3>;

SpectralField to_spectral(const SpectralGrid& grid, const PhysicalField& f);
SpectralField sample_spectral(const SpectralGrid& grid, const std::function<Vec3(const Vec3&)>& f);
/// Real parts of the inverse transform; the largest discarded imaginary
/// part is written to max_imag when given.
PhysicalField to_physical(const SpectralGrid& grid, const SpectralField& f, double* max_imag = nullptr);
GridField to_grid_field(const SpectralGrid& grid, const SpectralField& f);

/// v(k) - k (k . v(k)) / |k|^2, with the mean mode zeroed. Modes with a
/// Nyquist component are zeroed too: their projector has no Hermitian
/// partner, so keeping them would leave the field complex.
SpectralField leray_project(const SpectralGrid& grid, const SpectralField& f);

/// max_k |k . v(k)| / max_k |v(k)| (0 for the zero field).
double relative_divergence(const SpectralGrid& grid, const SpectralField& f);

/// Solves -Laplacian v + grad pi = f, div v = 0: v(k) = (P f)(k) / |k|^2.
/// Throws DomainError if f has a nonzero mean.
SpectralField stokes_solve(const SpectralGrid& grid, const SpectralField& f);

/// Spectral -Laplacian.
SpectralField negative_laplacian(const SpectralGrid& grid, const SpectralField& f);

/// Discrete ||v||_{L^r} + ||grad v||_{L^r} with spectral gradients.
double w1r_norm(const SpectralGrid& grid, const SpectralField& f, double r);

}  // namespace nssing
