#include "nssing/vec3.hpp"

#include <algorithm>
#include <ostream>

#include "nssing/errors.hpp"

namespace nssing {

Vec3::Vec3(double x, double y, double z) : c_{x, y, z} {
  if (!is_finite()) throw DomainError("Vec3: non-finite component");
}

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x() << ", " << v.y() << ", " << v.z() << ')';
}

Mat3 Mat3::rotation(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw DomainError("Mat3::rotation: zero axis");
  const Vec3 k = axis / n;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      r(i, j) = (i == j ? c : 0.0) + (1.0 - c) * k[i] * k[j];
  r(0, 1) -= s * k[2];
  r(0, 2) += s * k[1];
  r(1, 0) += s * k[2];
  r(1, 2) -= s * k[0];
  r(2, 0) -= s * k[1];
  r(2, 1) += s * k[0];
  return r;
}

double Mat3::norm() const {
  double s = 0.0;
  for (const auto& row : a_)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

double Mat3::max_abs() const {
  double m = 0.0;
  for (const auto& row : a_)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace nssing
