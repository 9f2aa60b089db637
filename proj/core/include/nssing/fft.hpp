#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace nssing {

/// In-place complex 3D FFT on an N^3 cube (FFTW backed). Forward is
/// unnormalized, inverse divides by N^3, so inverse(forward(f)) == f.
/// Data layout is row-major: index (i * N + j) * N + k.
class Fft3d {
 public:
  explicit Fft3d(std::size_t n);
  ~Fft3d();
  Fft3d(Fft3d&&) noexcept;
  Fft3d& operator=(Fft3d&&) noexcept;
  Fft3d(const Fft3d&) = delete;
  Fft3d& operator=(const Fft3d&) = delete;

  std::size_t n() const { return n_; }
  std::size_t size() const { return n_ * n_ * n_; }

  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

/// Signed mode number of FFT index i on an n-point axis; the Nyquist index
/// n/2 maps to -n/2.
constexpr long mode_number(std::size_t i, std::size_t n) {
  return i < (n + 1) / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

/// True for the unpaired Nyquist index of an even-length axis.
constexpr bool is_nyquist(std::size_t i, std::size_t n) { return n % 2 == 0 && i == n / 2; }

}  // namespace nssing
