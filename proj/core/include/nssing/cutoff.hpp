#pragma once

#include "nssing/errors.hpp"

namespace nssing {

/// Radial cutoff psi with psi = 1 on [0, inner], psi = 0 on [outer, inf),
/// and the septic Hermite transition 1 - (35t^4 - 84t^5 + 70t^6 - 20t^7)
/// in between, so value and three derivatives match at both ends (C^3).
class SepticCutoff {
 public:
  struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
  };

  SepticCutoff(double inner, double outer) : inner_(inner), outer_(outer) {
    if (!(inner > 0.0) || !(outer > inner)) throw DomainError("SepticCutoff: need 0 < inner < outer");
  }

  double inner() const { return inner_; }
  double outer() const { return outer_; }

  Jet operator()(double rho) const {
    if (rho <= inner_) return {1.0, 0.0, 0.0, 0.0};
    if (rho >= outer_) return {};
    const double w = outer_ - inner_;
    const double t = (rho - inner_) / w;
    const double u = 1.0 - t;
    const double t2 = t * t;
    const double s = t2 * t2 * (35.0 - 84.0 * t + 70.0 * t2 - 20.0 * t2 * t);
    const double s1 = 140.0 * t2 * t * u * u * u;
    const double s2 = 420.0 * t2 * u * u * (1.0 - 2.0 * t);
    const double s3 = 840.0 * t * u * (1.0 - 5.0 * t + 5.0 * t2);
    return {1.0 - s, -s1 / w, -s2 / (w * w), -s3 / (w * w * w)};
  }

 private:
  double inner_;
  double outer_;
};

}  // namespace nssing
