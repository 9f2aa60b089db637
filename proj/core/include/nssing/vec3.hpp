#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>

namespace nssing {

/// Cartesian 3-vector. The public constructor rejects NaN/Inf; arithmetic
/// results are produced through the unchecked path.
class Vec3 {
 public:
  constexpr Vec3() = default;
  Vec3(double x, double y, double z);

  static constexpr Vec3 unchecked(double x, double y, double z) {
    Vec3 v;
    v.c_ = {x, y, z};
    return v;
  }
  static constexpr Vec3 unit(std::size_t axis) {
    Vec3 v;
    v.c_[axis] = 1.0;
    return v;
  }

  constexpr double x() const { return c_[0]; }
  constexpr double y() const { return c_[1]; }
  constexpr double z() const { return c_[2]; }
  constexpr double operator[](std::size_t i) const { return c_[i]; }
  constexpr double& operator[](std::size_t i) { return c_[i]; }

  double norm() const { return std::sqrt(dot(*this)); }
  constexpr double dot(const Vec3& o) const {
    return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2];
  }
  constexpr Vec3 cross(const Vec3& o) const {
    return unchecked(c_[1] * o.c_[2] - c_[2] * o.c_[1],
                     c_[2] * o.c_[0] - c_[0] * o.c_[2],
                     c_[0] * o.c_[1] - c_[1] * o.c_[0]);
  }
  bool is_finite() const {
    return std::isfinite(c_[0]) && std::isfinite(c_[1]) && std::isfinite(c_[2]);
  }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(Vec3 a) { return a *= -1.0; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(Vec3 a, double s) { return a *= 1.0 / s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

 private:
  std::array<double, 3> c_{};
};

std::ostream& operator<<(std::ostream& os, const Vec3& v);

/// Dense 3x3 matrix, row-major: m(i, j) is row i, column j.
class Mat3 {
 public:
  constexpr Mat3() = default;

  static constexpr Mat3 identity() {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i) m(i, i) = 1.0;
    return m;
  }
  static constexpr Mat3 diag(double a, double b, double c) {
    Mat3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
  }
  /// Rotation by `angle` radians about the unit vector `axis` (Rodrigues).
  static Mat3 rotation(const Vec3& axis, double angle);

  constexpr double operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
  constexpr double& operator()(std::size_t i, std::size_t j) { return a_[i][j]; }

  constexpr double trace() const { return a_[0][0] + a_[1][1] + a_[2][2]; }
  constexpr Mat3 transpose() const {
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) t(i, j) = a_[j][i];
    return t;
  }
  constexpr double determinant() const {
    return a_[0][0] * (a_[1][1] * a_[2][2] - a_[1][2] * a_[2][1]) -
           a_[0][1] * (a_[1][0] * a_[2][2] - a_[1][2] * a_[2][0]) +
           a_[0][2] * (a_[1][0] * a_[2][1] - a_[1][1] * a_[2][0]);
  }
  /// Frobenius norm.
  double norm() const;
  double max_abs() const;

  constexpr Vec3 operator*(const Vec3& v) const {
    return Vec3::unchecked(a_[0][0] * v[0] + a_[0][1] * v[1] + a_[0][2] * v[2],
                           a_[1][0] * v[0] + a_[1][1] * v[1] + a_[1][2] * v[2],
                           a_[2][0] * v[0] + a_[2][1] * v[1] + a_[2][2] * v[2]);
  }
  constexpr Mat3 operator*(const Mat3& o) const {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) m(i, j) += a_[i][k] * o(k, j);
    return m;
  }
  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a_[i][j] += o(i, j);
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a_[i][j] -= o(i, j);
    return *this;
  }
  constexpr Mat3& operator*=(double s) {
    for (auto& row : a_)
      for (auto& v : row) v *= s;
    return *this;
  }
  friend constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend constexpr Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
  friend constexpr Mat3 operator*(double s, Mat3 a) { return a *= s; }
  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

 private:
  std::array<std::array<double, 3>, 3> a_{};
};

/// Outer product a b^T.
constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i] * b[j];
  return m;
}

}  // namespace nssing
