#include "nssing/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "nssing/errors.hpp"

namespace nssing {

SpectralGrid::SpectralGrid(std::size_t n, double length) : length_(length), fft_(n) {
  if (!(length > 0.0)) throw DomainError("SpectralGrid: side length must be positive");
}

Vec3 SpectralGrid::point(std::size_t i, std::size_t j, std::size_t k) const {
  const double h = spacing();
  const double lo = -0.5 * length_;
  return Vec3::unchecked(lo + h * static_cast<double>(i), lo + h * static_cast<double>(j),
                         lo + h * static_cast<double>(k));
}

Vec3 SpectralGrid::wavevector(std::size_t idx) const {
  const std::size_t nn = n();
  const double k0 = 2.0 * std::numbers::pi / length_;
  const std::size_t i = idx / (nn * nn);
  const std::size_t j = (idx / nn) % nn;
  const std::size_t k = idx % nn;
  return Vec3::unchecked(k0 * static_cast<double>(mode_number(i, nn)), k0 * static_cast<double>(mode_number(j, nn)),
                         k0 * static_cast<double>(mode_number(k, nn)));
}

bool SpectralGrid::has_nyquist(std::size_t idx) const {
  const std::size_t nn = n();
  return is_nyquist(idx / (nn * nn), nn) || is_nyquist((idx / nn) % nn, nn) || is_nyquist(idx % nn, nn);
}

bool SpectralGrid::dealias_keep(std::size_t idx) const {
  const std::size_t nn = n();
  const long lim = static_cast<long>(nn);
  auto keep = [&](std::size_t a) { return 3 * std::abs(mode_number(a, nn)) < lim; };
  return keep(idx / (nn * nn)) && keep((idx / nn) % nn) && keep(idx % nn);
}

SpectralField SpectralField::zero(const SpectralGrid& grid) {
  SpectralField f;
  for (auto& comp : f.c) comp.assign(grid.size(), {0.0, 0.0});
  return f;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (std::size_t d = 0; d < 3; ++d)
    for (std::size_t m = 0; m < c[d].size(); ++m) c[d][m] += o.c[d][m];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (std::size_t d = 0; d < 3; ++d)
    for (std::size_t m = 0; m < c[d].size(); ++m) c[d][m] -= o.c[d][m];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& comp : c)
    for (auto& v : comp) v *= s;
  return *this;
}

SpectralField to_spectral(const SpectralGrid& grid, const PhysicalField& f) {
  SpectralField out;
  for (std::size_t d = 0; d < 3; ++d) {
    if (f[d].size() != grid.size()) throw DomainError("to_spectral: size mismatch");
    out.c[d].assign(f[d].begin(), f[d].end());
    grid.fft().forward(out.c[d]);
  }
  return out;
}

SpectralField sample_spectral(const SpectralGrid& grid, const std::function<Vec3(const Vec3&)>& f) {
  const std::size_t n = grid.n();
  PhysicalField phys;
  for (auto& comp : phys) comp.resize(grid.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec3 v = f(grid.point(i, j, k));
        const std::size_t idx = (i * n + j) * n + k;
        for (std::size_t d = 0; d < 3; ++d) phys[d][idx] = v[d];
      }
  return to_spectral(grid, phys);
}

PhysicalField to_physical(const SpectralGrid& grid, const SpectralField& f, double* max_imag) {
  PhysicalField out;
  double imag = 0.0;
  std::vector<std::complex<double>> buf;
  for (std::size_t d = 0; d < 3; ++d) {
    buf = f.c[d];
    grid.fft().inverse(buf);
    out[d].resize(buf.size());
    for (std::size_t m = 0; m < buf.size(); ++m) {
      out[d][m] = buf[m].real();
      imag = std::max(imag, std::abs(buf[m].imag()));
    }
  }
  if (max_imag) *max_imag = imag;
  return out;
}

GridField to_grid_field(const SpectralGrid& grid, const SpectralField& f) {
  const PhysicalField phys = to_physical(grid, f);
  const double lo = -0.5 * grid.length();
  GridField g(grid.n(), grid.length(), Vec3::unchecked(lo, lo, lo));
  for (std::size_t d = 0; d < 3; ++d) std::copy(phys[d].begin(), phys[d].end(), g.component(d).begin());
  return g;
}

SpectralField leray_project(const SpectralGrid& grid, const SpectralField& f) {
  SpectralField out = f;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const Vec3 k = grid.wavevector(m);
    const double k2 = k.dot(k);
    if (k2 == 0.0 || grid.has_nyquist(m)) {
      for (auto& comp : out.c) comp[m] = 0.0;
      continue;
    }
    const std::complex<double> kv = k[0] * f.c[0][m] + k[1] * f.c[1][m] + k[2] * f.c[2][m];
    for (std::size_t d = 0; d < 3; ++d) out.c[d][m] -= k[d] * kv / k2;
  }
  return out;
}

double relative_divergence(const SpectralGrid& grid, const SpectralField& f) {
  double div = 0.0;
  double mag = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const Vec3 k = grid.wavevector(m);
    const std::complex<double> kv = k[0] * f.c[0][m] + k[1] * f.c[1][m] + k[2] * f.c[2][m];
    div = std::max(div, std::abs(kv) / std::max(1.0, k.norm()));
    for (const auto& comp : f.c) mag = std::max(mag, std::abs(comp[m]));
  }
  return mag > 0.0 ? div / mag : 0.0;
}

SpectralField stokes_solve(const SpectralGrid& grid, const SpectralField& f) {
  double mag = 0.0;
  for (const auto& comp : f.c)
    for (const auto& v : comp) mag = std::max(mag, std::abs(v));
  for (const auto& comp : f.c)
    if (std::abs(comp[0]) > 1e-12 * mag) throw DomainError("stokes_solve: forcing must have zero mean");

  SpectralField v = leray_project(grid, f);
  for (std::size_t m = 1; m < grid.size(); ++m) {
    const Vec3 k = grid.wavevector(m);
    const double k2 = k.dot(k);
    for (auto& comp : v.c) comp[m] /= k2;
  }
  return v;
}

SpectralField negative_laplacian(const SpectralGrid& grid, const SpectralField& f) {
  SpectralField out = f;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const Vec3 k = grid.wavevector(m);
    const double k2 = k.dot(k);
    for (auto& comp : out.c) comp[m] *= k2;
  }
  return out;
}

double w1r_norm(const SpectralGrid& grid, const SpectralField& f, double r) {
  return sobolev_norm(to_grid_field(grid, f), r, GridGradient::spectral).value;
}

}  // namespace nssing
