#include "nssing/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "nssing/errors.hpp"

namespace nssing {

namespace {
// The FFTW planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft3d::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

Fft3d::Fft3d(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 2) throw DomainError("Fft3d: grid size must be at least 2");
  std::vector<std::complex<double>> scratch(size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int ni = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft_3d(ni, ni, ni, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->inverse = fftw_plan_dft_3d(ni, ni, ni, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans_->forward || !plans_->inverse) throw EvaluationError("Fft3d: FFTW planning failed");
}

Fft3d::~Fft3d() = default;
Fft3d::Fft3d(Fft3d&&) noexcept = default;
Fft3d& Fft3d::operator=(Fft3d&&) noexcept = default;

void Fft3d::forward(std::span<std::complex<double>> data) const {
  if (data.size() != size()) throw DomainError("Fft3d::forward: size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->forward, buf, buf);
}

void Fft3d::inverse(std::span<std::complex<double>> data) const {
  if (data.size() != size()) throw DomainError("Fft3d::inverse: size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->inverse, buf, buf);
  const double scale = 1.0 / static_cast<double>(size());
  for (auto& v : data) v *= scale;
}

}  // namespace nssing
