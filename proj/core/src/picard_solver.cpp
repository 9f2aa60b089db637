#include "nssing/picard_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nssing/cutoff.hpp"
#include "nssing/errors.hpp"
#include "nssing/norms.hpp"

namespace nssing {

namespace {

void require_same_grid(const SpectralGrid& grid, const SpectralField& f, const char* what) {
  for (const auto& comp : f.c)
    if (comp.size() != grid.size()) throw DomainError(std::string(what) + ": field does not match grid");
}

double max_abs(const PhysicalField& f) {
  double m = 0.0;
  for (const auto& comp : f)
    for (double v : comp) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double drift_cutoff(double rho, double delta_in, double delta_out) {
  const SepticCutoff inner(0.5 * delta_in, delta_in);
  const SepticCutoff outer(2.0 * delta_out / 3.0, delta_out);
  return (1.0 - inner(rho).value) * outer(rho).value;
}

MollifiedDrift make_drift(const SpectralGrid& grid, const LandauParams& params, double delta_in, double delta_out) {
  if (!(delta_in > 0.0) || !(2.0 * delta_out / 3.0 > delta_in))
    throw DomainError("make_drift: need 0 < delta_in < 2 delta_out / 3");
  if (!(delta_out < 0.5 * grid.length())) throw DomainError("make_drift: delta_out must fit inside the torus");

  MollifiedDrift d;
  d.params = params;
  d.delta_in = delta_in;
  d.delta_out = delta_out;

  auto chi_u = [&](const Vec3& x) {
    const double rho = x.norm();
    if (params.is_zero() || rho <= 0.5 * delta_in || rho >= delta_out) return Vec3{};
    return drift_cutoff(rho, delta_in, delta_out) * landau_eval(params, x).u;
  };
  const SpectralField raw = sample_spectral(grid, chi_u);
  d.field = leray_project(grid, raw);
  d.physical = to_physical(grid, d.field);

  const PhysicalField raw_phys = to_physical(grid, raw);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t m = 0; m < grid.size(); ++m) {
      const double diff = d.physical[c][m] - raw_phys[c][m];
      num += diff * diff;
      den += raw_phys[c][m] * raw_phys[c][m];
    }
  d.projection_deviation = den > 0.0 ? std::sqrt(num / den) : 0.0;

  if (!params.is_zero()) {
    const double h = grid.spacing();
    std::vector<WeightedSample> samples(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) {
      const double mag =
          std::sqrt(d.physical[0][m] * d.physical[0][m] + d.physical[1][m] * d.physical[1][m] +
                    d.physical[2][m] * d.physical[2][m]);
      samples[m] = {mag, h * h * h};
    }
    d.weak_l3 = weak_l3_quasinorm(samples).value;
    const auto exact = cell_samples([&](const Vec3& x) { return landau_eval(params, x).u.norm(); }, 0.0,
                                    delta_out, 400, 16, 32);
    d.weak_l3_landau = weak_l3_quasinorm(exact).value;
  }
  return d;
}

SpectralField abc_forcing(const SpectralGrid& grid, double amplitude) {
  return sample_spectral(grid, [amplitude](const Vec3& x) {
    return amplitude * Vec3::unchecked(std::sin(x.z()) + std::cos(x.y()), std::sin(x.x()) + std::cos(x.z()),
                                       std::sin(x.y()) + std::cos(x.x()));
  });
}

SpectralField advective_divergence(const SpectralGrid& grid, const SpectralField& v, const MollifiedDrift& drift) {
  require_same_grid(grid, v, "advective_divergence");
  require_same_grid(grid, drift.field, "advective_divergence (drift)");
  const PhysicalField vp = to_physical(grid, v);
  const PhysicalField& up = drift.physical;
  const std::size_t np = grid.size();

  SpectralField out = SpectralField::zero(grid);
  std::vector<std::complex<double>> m_ij(np);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      // M_ij = U_i v_j + v_i (U_j + v_j)
      for (std::size_t m = 0; m < np; ++m) m_ij[m] = up[i][m] * vp[j][m] + vp[i][m] * (up[j][m] + vp[j][m]);
      grid.fft().forward(m_ij);
      // (div M)_j = d_i M_ij
      for (std::size_t m = 0; m < np; ++m) {
        if (!grid.dealias_keep(m)) continue;
        const double ki = grid.wavevector(m)[i];
        out.c[j][m] += std::complex<double>(0.0, ki) * m_ij[m];
      }
    }
  }
  return out;
}

SpectralField picard_step(const SpectralGrid& grid, const SpectralField& v, const MollifiedDrift& drift,
                          const SpectralField& f) {
  require_same_grid(grid, f, "picard_step");
  return stokes_solve(grid, f - advective_divergence(grid, v, drift));
}

double nsv_residual(const SpectralGrid& grid, const SpectralField& v, const MollifiedDrift& drift,
                    const SpectralField& f) {
  SpectralField res = negative_laplacian(grid, v);
  res += leray_project(grid, advective_divergence(grid, v, drift));
  res -= leray_project(grid, f);
  return max_abs(to_physical(grid, res));
}

const char* to_string(PicardStatus status) {
  switch (status) {
    case PicardStatus::converged:
      return "converged";
    case PicardStatus::max_iterations:
      return "max_iterations";
    case PicardStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

double IterationTrace::contraction_factor() const {
  double best = std::numeric_limits<double>::quiet_NaN();
  const std::size_t first = ratios.size() > 2 ? 2 : 1;
  for (std::size_t n = first; n < ratios.size(); ++n)
    if (!std::isnan(ratios[n])) best = std::isnan(best) ? ratios[n] : std::max(best, ratios[n]);
  return best;
}

IterationTrace iterate(const SpectralGrid& grid, const MollifiedDrift& drift, const SpectralField& f,
                       const SpectralField& v0, const PicardOptions& options) {
  if (!(options.r > 1.0 && options.r < 3.0)) throw DomainError("iterate: r must lie in (1, 3)");
  if (!(options.tol > 0.0)) throw DomainError("iterate: tol must be positive");
  if (options.max_iters < 1) throw DomainError("iterate: max_iters must be at least 1");
  require_same_grid(grid, v0, "iterate");

  IterationTrace trace;
  SpectralField v = v0;
  trace.norms.push_back(w1r_norm(grid, v, options.r));
  double first_norm = 0.0;
  for (int n = 0; n < options.max_iters; ++n) {
    SpectralField next = picard_step(grid, v, drift, f);
    const double inc = w1r_norm(grid, next - v, options.r);
    const double norm = w1r_norm(grid, next, options.r);
    trace.increments.push_back(inc);
    trace.ratios.push_back(n == 0 || trace.increments[n - 1] == 0.0
                               ? std::numeric_limits<double>::quiet_NaN()
                               : inc / trace.increments[n - 1]);
    trace.norms.push_back(norm);
    v = std::move(next);
    if (n == 0) first_norm = norm;
    if (!std::isfinite(norm) || (first_norm > 0.0 && norm > options.divergence_factor * first_norm)) {
      trace.status = PicardStatus::diverged;
      break;
    }
    if (inc < options.tol) {
      trace.status = PicardStatus::converged;
      break;
    }
  }
  if (trace.status != PicardStatus::diverged) trace.fixed_point_residual = nsv_residual(grid, v, drift, f);
  trace.solution = std::move(v);
  return trace;
}

SpectralField random_start(const SpectralGrid& grid, double size, double r, std::uint64_t seed) {
  if (!(size >= 0.0) || !std::isfinite(size)) throw DomainError("random_start: size must be finite and >= 0");
  if (size == 0.0) return SpectralField::zero(grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  PhysicalField noise;
  for (auto& comp : noise) {
    comp.resize(grid.size());
    for (double& v : comp) v = gauss(rng);
  }
  SpectralField f = to_spectral(grid, noise);
  const std::size_t n = grid.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(mode_number(i, n)) <= 4 && std::abs(mode_number(j, n)) <= 4 && std::abs(mode_number(k, n)) <= 4)
          continue;
        const std::size_t idx = (i * n + j) * n + k;
        for (auto& comp : f.c) comp[idx] = 0.0;
      }
  f = leray_project(grid, f);
  const double norm = w1r_norm(grid, f, r);
  if (!(norm > 0.0)) return SpectralField::zero(grid);
  f *= size / norm;
  return f;
}

IterationTrace run_contraction(const SpectralGrid& grid, const MollifiedDrift& drift, const SpectralField& f,
                               const PicardOptions& options) {
  IterationTrace trace = iterate(grid, drift, f, SpectralField::zero(grid), options);
  if (options.second_start && trace.status == PicardStatus::converged) {
    const IterationTrace other = iterate(grid, drift, f, stokes_solve(grid, f), options);
    trace.second_status = other.status;
    trace.uniqueness_distance = w1r_norm(grid, trace.solution - other.solution, options.r);
  }
  return trace;
}

}  // namespace nssing
