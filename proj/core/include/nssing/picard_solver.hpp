#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "nssing/landau_fields.hpp"
#include "nssing/spectral.hpp"

namespace nssing {

// Fixed-point iteration for the perturbation problem around a Landau drift
//
//   -Laplacian v + U . grad v + v . grad (U + v) + grad pi = f,  div v = 0,
//
// posed on the periodic cube of SpectralGrid instead of a Dirichlet ball.
// The map is  Phi(v) = S( f - div(U (x) v + v (x) (U + v)) ),  S the Stokes
// solution operator; small U and f make Phi a contraction.

/// chi(|x|) U^b(x) sampled on the grid and re-projected divergence-free.
/// chi vanishes for |x| < delta_in/2 and |x| > delta_out, and equals 1 on
/// [delta_in, 2 delta_out/3].
struct MollifiedDrift {
  LandauParams params = LandauParams::zero();
  double delta_in = 0.3;
  double delta_out = 1.5;
  SpectralField field;
  PhysicalField physical;
  /// ||P(chi U) - chi U||_2 / ||chi U||_2 on the grid.
  double projection_deviation = 0.0;
  /// Weak-L^3 quasinorm of the grid drift and of U^b on |x| < delta_out.
  double weak_l3 = 0.0;
  double weak_l3_landau = 0.0;
};

/// The cutoff chi at radius rho.
double drift_cutoff(double rho, double delta_in, double delta_out);

MollifiedDrift make_drift(const SpectralGrid& grid, const LandauParams& params, double delta_in = 0.3,
                          double delta_out = 1.5);

/// amp * (sin z + cos y, sin x + cos z, sin y + cos x): divergence-free,
/// mean-zero, and a fixed point of the Stokes solve (|k| = 1).
SpectralField abc_forcing(const SpectralGrid& grid, double amplitude);

/// div(U (x) v + v (x) (U + v)), products formed in physical space and
/// truncated by the two-thirds rule before differentiation.
SpectralField advective_divergence(const SpectralGrid& grid, const SpectralField& v, const MollifiedDrift& drift);

/// Phi(v) = stokes_solve(f - advective_divergence(v)).
SpectralField picard_step(const SpectralGrid& grid, const SpectralField& v, const MollifiedDrift& drift,
                          const SpectralField& f);

/// Largest physical-space entry of -Laplacian v + P div(...) - P f,
/// evaluated directly rather than through the Stokes solve.
double nsv_residual(const SpectralGrid& grid, const SpectralField& v, const MollifiedDrift& drift,
                    const SpectralField& f);

struct PicardOptions {
  double r = 2.0;
  int max_iters = 100;
  double tol = 1e-10;
  /// Out of regime once ||v_n|| exceeds this multiple of ||v_1||.
  double divergence_factor = 1e3;
  /// Also iterate from stokes_solve(f) and report the distance between limits.
  bool second_start = true;
};

enum class PicardStatus { converged, max_iterations, diverged };

const char* to_string(PicardStatus status);

struct IterationTrace {
  PicardStatus status = PicardStatus::max_iterations;
  /// norms[n] = ||v_n||_{W^{1,r}}, n = 0 .. iterations
  std::vector<double> norms;
  /// increments[n] = ||v_{n+1} - v_n||_{W^{1,r}}
  std::vector<double> increments;
  /// ratios[n] = increments[n] / increments[n-1] (rho_n); ratios[0] is NaN
  std::vector<double> ratios;
  double fixed_point_residual = std::numeric_limits<double>::quiet_NaN();
  /// ||v* - v*'|| between the limits from v0 = 0 and v0 = stokes_solve(f).
  double uniqueness_distance = std::numeric_limits<double>::quiet_NaN();
  PicardStatus second_status = PicardStatus::max_iterations;
  SpectralField solution;

  int iterations() const { return static_cast<int>(increments.size()); }
  /// max rho_n over n >= 2 (over all defined n when fewer exist); NaN if none.
  double contraction_factor() const;
};

/// Iterates v_{n+1} = Phi(v_n) from v0 until the increment drops below tol,
/// the iterate blows up, or max_iters is reached.
IterationTrace iterate(const SpectralGrid& grid, const MollifiedDrift& drift, const SpectralField& f,
                       const SpectralField& v0, const PicardOptions& options);

/// Seeded random divergence-free field with modes |m_axis| <= 4, scaled to
/// W^{1,r} norm `size` (zero when size is 0). A start unrelated to the
/// trajectory from 0, whose second iterate is stokes_solve(f).
SpectralField random_start(const SpectralGrid& grid, double size, double r, std::uint64_t seed);

/// iterate() from v0 = 0, plus the second start when requested.
IterationTrace run_contraction(const SpectralGrid& grid, const MollifiedDrift& drift, const SpectralField& f,
                               const PicardOptions& options = {});

}  // namespace nssing
