#include "nssing_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "field_spec.hpp"
#include "nssing/errors.hpp"
#include "nssing/geometry_quadrature.hpp"
#include "nssing/landau_fields.hpp"
#include "nssing/norms.hpp"
#include "nssing/picard_solver.hpp"
#include "nssing/weak_form.hpp"
#include "report.hpp"

#ifndef NSSING_VERSION
#define NSSING_VERSION "unknown"
#endif

namespace nssing::cli {

namespace {

struct GlobalOptions {
  std::string output;
  std::string format = "json";
  std::string csv;
  std::uint64_t seed = 0;
  bool no_timing = false;
};

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive and finite");
}

json params_json(const LandauParams& p) {
  return {{"A", number(p.A())}, {"beta", p.beta()}, {"b", to_json(p.b())}, {"axis", to_json(p.axis())}};
}

double max_pairwise_relative(const std::vector<Vec3>& bs) {
  double scale = 0.0;
  for (const Vec3& b : bs) scale = std::max(scale, b.norm());
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = i + 1; j < bs.size(); ++j) worst = std::max(worst, (bs[i] - bs[j]).norm() / scale);
  return worst;
}

std::vector<Vec3> random_points(std::uint64_t seed, int n, double r0, double r1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(r0, r1);
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Vec3 d = Vec3::unchecked(gauss(rng), gauss(rng), gauss(rng));
    while (!(d.norm() > 0.0)) d = Vec3::unchecked(gauss(rng), gauss(rng), gauss(rng));
    pts.push_back(radius(rng) * (d / d.norm()));
  }
  return pts;
}

std::vector<Vec3> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open points file '" + path + "'");
  std::vector<Vec3> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const char first = line[line.find_first_not_of(" \t")];
    if (pts.empty() && std::isalpha(static_cast<unsigned char>(first))) continue;  // header
    pts.push_back(parse_vec3(line));
  }
  if (pts.empty()) throw DomainError("points file '" + path + "' has no rows");
  return pts;
}

// ---------------------------------------------------------------- landau

struct LandauArgs {
  std::optional<double> A;
  std::optional<double> beta;
  std::string axis = "0,0,1";
  std::vector<std::string> points;
  std::string points_file;
};

void cmd_landau(const LandauArgs& a, Report& rep) {
  if (a.A.has_value() == a.beta.has_value()) throw DomainError("landau: give exactly one of --A or --beta");
  const Vec3 axis = parse_vec3(a.axis);
  const LandauParams p = a.A ? LandauParams::from_A(*a.A, axis) : LandauParams::from_beta(*a.beta, axis);

  std::vector<Vec3> pts;
  for (const auto& s : a.points) pts.push_back(parse_vec3(s));
  if (!a.points_file.empty()) {
    const auto more = read_points_file(a.points_file);
    pts.insert(pts.end(), more.begin(), more.end());
  }
  if (pts.empty()) throw DomainError("landau: no evaluation points (use --point or --points)");
  for (const Vec3& x : pts)
    if (!(x.norm() > 0.0)) throw DomainError("landau: evaluation point at the origin");

  rep.config() = {{"A", a.A ? number(*a.A) : json(nullptr)},
                  {"beta", a.beta ? number(*a.beta) : json(nullptr)},
                  {"axis", to_json(axis)},
                  {"points", json::array()}};
  for (const Vec3& x : pts) rep.config()["points"].push_back(to_json(x));

  rep.results()["params"] = params_json(p);
  json rows = json::array();
  rep.table().columns = {"x", "y", "z", "ux", "uy", "uz", "p"};
  for (const Vec3& x : pts) {
    const FlowState s = landau_eval(p, x);
    rows.push_back({{"x", to_json(x)},
                    {"u", to_json(s.u)},
                    {"p", number(s.p)},
                    {"grad_u", to_json(s.grad_u)},
                    {"T", to_json(flux_tensor(s).matrix())}});
    rep.table().rows.push_back({x.x(), x.y(), x.z(), s.u.x(), s.u.y(), s.u.z(), s.p});
  }
  rep.results()["points"] = rows;
}

// ---------------------------------------------------------------- flux

struct FluxArgs {
  std::string field = "landau:A=2";
  std::string radii = "0.5,1,1.5";
  int n_theta = 64;
  int n_phi = 128;
  double tol = 1e-8;
  double force_tol = 1e-6;
  bool fd = false;
};

void cmd_flux(const FluxArgs& a, Report& rep) {
  FieldSpec spec = parse_field(a.field);
  const std::vector<double> radii = parse_list(a.radii);
  for (double R : radii) require_positive(R, "radius");
  require_positive(a.tol, "--tol");
  require_positive(a.force_tol, "--force-tol");
  if (a.fd) spec.field.gradient = GradientMode::finite_difference;
  rep.config() = {{"field", a.field},     {"radii", radii}, {"n_theta", a.n_theta}, {"n_phi", a.n_phi},
                  {"tol", a.tol},         {"force_tol", a.force_tol},
                  {"gradient", spec.field.gradient == GradientMode::analytic ? "analytic" : "finite_difference"}};

  const SphereResolution res{a.n_theta, a.n_phi};
  std::vector<Vec3> bs;
  json per = json::array();
  rep.table().columns = {"R", "bx", "by", "bz"};
  for (double R : radii) {
    const Vec3 b = flux_integral(spec.field, R, res);
    bs.push_back(b);
    per.push_back({{"R", R}, {"b", to_json(b)}});
    rep.table().rows.push_back({R, b.x(), b.y(), b.z()});
  }
  const double dev = max_pairwise_relative(bs);
  rep.results()["b"] = per;
  rep.results()["max_pairwise_relative_deviation"] = dev;
  rep.check("radius_independence", dev, "<", a.tol);
  if (spec.landau) {
    // relative to beta, or absolute for the zero force
    const Vec3 ref = spec.landau->b();
    const double scale = spec.landau->is_zero() ? 1.0 : ref.norm();
    double err = 0.0;
    for (const Vec3& b : bs) err = std::max(err, (b - ref).norm() / scale);
    rep.results()["reference"] = params_json(*spec.landau);
    rep.results()["max_relative_error_vs_reference"] = err;
    rep.check("force_match", err, "<", a.force_tol);
  }
}

// ---------------------------------------------------------------- verify

struct WeakArgs {
  std::string field = "landau:A=2";
  std::string center = "0,0,0";
  double a = 0.5;
  double b = 1.0;
  int n_r = 32;
  int n_theta = 64;
  int n_phi = 128;
  double tol = 0.02;
  double zero_tol = 1e-6;
  std::string expect;
};

void cmd_verify_weak(const WeakArgs& w, Report& rep) {
  const FieldSpec spec = parse_field(w.field);
  const Vec3 center = parse_vec3(w.center);
  rep.config() = {{"field", w.field}, {"center", to_json(center)}, {"a", w.a},           {"b", w.b},
                  {"n_r", w.n_r},     {"n_theta", w.n_theta},      {"n_phi", w.n_phi},   {"tol", w.tol},
                  {"zero_tol", w.zero_tol}, {"expect", w.expect.empty() ? json(nullptr) : json(w.expect)}};

  const TestFunction phi = make_test_function(center, w.a, w.b, Vec3::unit(2));
  const WeakResidual r = weak_residual(spec.field, phi, BallResolution{w.n_r, {w.n_theta, w.n_phi}});
  rep.results()["value"] = to_json(r.value);
  rep.results()["nodes"] = r.nodes;
  rep.results()["exactness_degree"] = r.exactness_degree;

  std::optional<Vec3> force;
  if (!w.expect.empty()) {
    force = parse_vec3(w.expect);
  } else if (spec.landau) {
    force = spec.landau->b();
  }
  if (!force) return;

  // <b delta, phi_m> = b . phi_m(0) for the test field with direction e_m
  Vec3 expected;
  for (std::size_t m = 0; m < 3; ++m)
    expected[m] = force->dot(make_test_function(center, w.a, w.b, Vec3::unit(m)).value(Vec3{}));
  const double beta = force->norm();
  const double err = (r.value - expected).norm();
  rep.results()["force"] = to_json(*force);
  rep.results()["expected"] = to_json(expected);
  rep.results()["abs_error"] = err;
  rep.results()["origin_in_support"] = center.norm() < w.b;
  if (center.norm() < w.b && beta > 0.0) {
    rep.results()["relative_error"] = err / beta;
    rep.check("dirac_pairing", err / beta, "<=", w.tol);
  } else {
    rep.check("zero_pairing", err, "<", w.zero_tol * std::max(beta, 1.0));
  }
}

struct NsArgs {
  std::string field = "landau:A=2";
  int samples = 100;
  double rmin = 0.01;
  double rmax = 1.5;
  double h_rel = 1e-3;
  double tol = 1e-4;
};

void cmd_verify_ns(const NsArgs& a, std::uint64_t seed, Report& rep) {
  const FieldSpec spec = parse_field(a.field);
  if (!spec.landau) throw DomainError("verify ns: needs a pure Landau field (landau:A=... or landau:beta=...)");
  if (a.samples < 1) throw DomainError("verify ns: --samples must be >= 1");
  if (!(a.rmin > 0.0) || !(a.rmax >= a.rmin)) throw DomainError("verify ns: need 0 < rmin <= rmax");
  require_positive(a.h_rel, "--h-rel");
  if (a.h_rel >= 0.25) throw DomainError("verify ns: --h-rel must be below 1/4");
  rep.config() = {{"field", a.field}, {"samples", a.samples}, {"rmin", a.rmin},
                  {"rmax", a.rmax},   {"h_rel", a.h_rel},     {"tol", a.tol}};

  double worst = 0.0;
  Vec3 worst_x;
  for (const Vec3& x : random_points(seed, a.samples, a.rmin, a.rmax)) {
    const double r = x.norm();
    const double v = ns_residual(*spec.landau, x, a.h_rel * r).norm() * r * r * r;
    if (v > worst) {
      worst = v;
      worst_x = x;
    }
  }
  rep.results()["params"] = params_json(*spec.landau);
  rep.results()["max_scaled_residual"] = worst;
  rep.results()["worst_point"] = to_json(worst_x);
  rep.check("scaled_residual", worst, "<", a.tol);
}

struct SelfsimArgs {
  std::string field = "landau:A=2";
  double lambda = 0.5;
  int samples = 100;
  double rmin = 0.05;
  double rmax = 1.5;
  double tol = 1e-12;
};

void cmd_verify_selfsim(const SelfsimArgs& a, std::uint64_t seed, Report& rep) {
  const FieldSpec spec = parse_field(a.field);
  if (!(a.lambda > 0.0) || !(a.lambda < 1.0)) throw DomainError("verify selfsim: --lambda must lie in (0, 1)");
  if (a.samples < 1) throw DomainError("verify selfsim: --samples must be >= 1");
  if (!(a.rmin > 0.0) || !(a.rmax >= a.rmin)) throw DomainError("verify selfsim: need 0 < rmin <= rmax");
  rep.config() = {{"field", a.field}, {"lambda", a.lambda}, {"samples", a.samples},
                  {"rmin", a.rmin},   {"rmax", a.rmax},     {"tol", a.tol}};

  double abs_u = 0.0;
  double rel = 0.0;
  for (const Vec3& x : random_points(seed, a.samples, a.rmin, a.rmax)) {
    const FlowState base = spec.field.probe(x);
    const FlowState scaled = rescale(spec.field.probe, a.lambda, x);
    const double du = (scaled.u - base.u).norm();
    const double dp = std::abs(scaled.p - base.p);
    abs_u = std::max(abs_u, du);
    const double su = base.u.norm();
    const double sp = std::abs(base.p);
    rel = std::max(rel, su > 0.0 ? du / su : du);
    rel = std::max(rel, sp > 0.0 ? dp / sp : dp);
  }
  rep.results()["max_abs_velocity_deviation"] = abs_u;
  rep.results()["max_relative_deviation"] = rel;
  rep.check("self_similarity", rel, "<=", a.tol);
}

// ---------------------------------------------------------------- picard

struct PicardArgs {
  double amp = 1e-3;
  int grid = 32;
  double r = 2.0;
  double delta_in = 0.3;
  double delta_out = 1.5;
  std::optional<double> A;
  std::optional<double> beta;
  int iters = 100;
  double tol = 1e-10;
  double rho_max = 0.5;
  std::string sweep;
  bool single_start = false;
};

json trace_json(const IterationTrace& t) {
  json ratios = json::array();
  for (double v : t.ratios) ratios.push_back(number(v));
  return {{"status", to_string(t.status)},
          {"iterations", t.iterations()},
          {"norms", t.norms},
          {"increments", t.increments},
          {"ratios", ratios},
          {"contraction_factor", number(t.contraction_factor())},
          {"fixed_point_residual", number(t.fixed_point_residual)}};
}

void cmd_picard(const PicardArgs& a, std::uint64_t seed, Report& rep) {
  if (a.grid < 16 || (a.grid & (a.grid - 1)) != 0) throw DomainError("picard: --grid must be a power of two >= 16");
  if (a.A && a.beta) throw DomainError("picard: give at most one of --A or --beta");
  if (!(a.amp >= 0.0) || !std::isfinite(a.amp)) throw DomainError("picard: --amp must be finite and >= 0");
  require_positive(a.tol, "--tol");
  if (a.iters < 1) throw DomainError("picard: --iters must be >= 1");
  const LandauParams params =
      a.A ? LandauParams::from_A(*a.A) : LandauParams::from_beta(a.beta.value_or(1.0));
  std::vector<double> sweep;
  if (!a.sweep.empty()) sweep = parse_list(a.sweep);

  rep.config() = {{"amp", a.amp},
                  {"grid", a.grid},
                  {"r", a.r},
                  {"delta_in", a.delta_in},
                  {"delta_out", a.delta_out},
                  {"drift", params_json(params)},
                  {"iters", a.iters},
                  {"tol", a.tol},
                  {"rho_max", a.rho_max},
                  {"sweep", sweep},
                  {"second_start", !a.single_start}};

  const SpectralGrid grid(static_cast<std::size_t>(a.grid));
  const MollifiedDrift drift = make_drift(grid, params, a.delta_in, a.delta_out);
  PicardOptions opts;
  opts.r = a.r;
  opts.max_iters = a.iters;
  opts.tol = a.tol;
  opts.second_start = !a.single_start;

  const IterationTrace t = run_contraction(grid, drift, abc_forcing(grid, a.amp), opts);
  rep.results()["drift"] = {{"params", params_json(params)},
                            {"projection_deviation", drift.projection_deviation},
                            {"weak_l3", drift.weak_l3},
                            {"weak_l3_landau", drift.weak_l3_landau}};
  rep.results()["trace"] = trace_json(t);
  rep.results()["uniqueness_distance"] = number(t.uniqueness_distance);
  rep.results()["second_status"] = opts.second_start ? json(to_string(t.second_status)) : json(nullptr);

  rep.table().columns = {"iter", "increment", "ratio"};
  for (int n = 0; n < t.iterations(); ++n)
    rep.table().rows.push_back({static_cast<double>(n), t.increments[n], t.ratios[n]});

  if (t.status == PicardStatus::diverged) {
    rep.set_out_of_regime(true);
    return;
  }
  double worst = 0.0;
  for (std::size_t n = 2; n < t.ratios.size(); ++n) worst = std::max(worst, t.ratios[n]);
  rep.check("contraction", worst, "<", a.rho_max);
  rep.check("converged", t.status == PicardStatus::converged ? 0.0 : 1.0, "<=", 0.0);
  rep.check("fixed_point_residual", t.fixed_point_residual, "<=", 10.0 * a.tol);
  if (opts.second_start) {
    rep.check("uniqueness", t.uniqueness_distance, "<", 10.0 * a.tol);
    // stokes_solve(f) is the first iterate from 0, so also start from an
    // unrelated seeded field of the same size.
    const SpectralField f = abc_forcing(grid, a.amp);
    const SpectralField v0 = random_start(grid, w1r_norm(grid, stokes_solve(grid, f), a.r), a.r, seed);
    PicardOptions third = opts;
    third.second_start = false;
    const IterationTrace rt = iterate(grid, drift, f, v0, third);
    const double dist = w1r_norm(grid, rt.solution - t.solution, a.r);
    rep.results()["random_start"] = {{"status", to_string(rt.status)},
                                     {"iterations", rt.iterations()},
                                     {"initial_norm", rt.norms.front()},
                                     {"distance", number(dist)}};
    rep.check("uniqueness_random_start", dist, "<", 10.0 * a.tol);
  }

  if (!sweep.empty()) {
    json rows = json::array();
    double prev = 0.0;
    int violations = 0;
    PicardOptions sweep_opts = opts;
    sweep_opts.second_start = false;
    for (double amp : sweep) {
      const IterationTrace s = run_contraction(grid, drift, abc_forcing(grid, amp), sweep_opts);
      const double rho = s.contraction_factor();
      if (std::isfinite(rho)) {
        if (rho < prev) ++violations;
        prev = rho;
      }
      rows.push_back({{"amp", amp}, {"status", to_string(s.status)}, {"iterations", s.iterations()},
                      {"contraction_factor", number(rho)}});
    }
    rep.results()["sweep"] = rows;
    rep.check("sweep_nondecreasing", violations, "<=", 0.0);
  }
}

// ---------------------------------------------------------------- norms

struct NormsArgs {
  std::string field;
  bool weak_l3 = false;
  std::string lorentz;
  std::optional<double> lp;
  std::string domain = "ball:2";
  std::string cells = "1000,25,40";
  std::optional<double> expect;
  double tol = 0.02;

  std::string sweep_beta;
  bool sup_sphere = false;

  bool decay = false;
  std::string ref;
  double q = 2.0;
  std::string shells = "1,0.5,0.25,0.125,0.0625";
  double decay_tol = 1e-12;
  int n_theta = 64;
  int n_phi = 128;

  std::optional<double> w1r;
  int grid = 32;
  double box = 4.0 * std::numbers::pi;
};

std::vector<WeightedSample> field_samples(const FieldSpec& spec, double R, const std::vector<double>& cells) {
  std::vector<WeightedSample> out;
  if (!spec.grid_points.empty()) {
    for (std::size_t m = 0; m < spec.grid_points.size(); ++m) {
      const Vec3& x = spec.grid_points[m];
      if (x.norm() > R || !(spec.grid_volumes[m] > 0.0)) continue;
      out.push_back({spec.field.probe(x).u.norm(), spec.grid_volumes[m]});
    }
    if (out.empty()) throw DomainError("norms: no grid points inside the domain");
    return out;
  }
  if (cells.size() != 3) throw DomainError("norms: --cells takes n_r,n_theta,n_phi");
  const auto probe = spec.field.probe;
  return cell_samples([&probe](const Vec3& x) { return probe(x).u.norm(); }, 0.0, R, static_cast<int>(cells[0]),
                      static_cast<int>(cells[1]), static_cast<int>(cells[2]));
}

void cmd_norms(const NormsArgs& a, Report& rep) {
  const bool sample_mode = a.weak_l3 || !a.lorentz.empty() || a.lp.has_value();
  const int modes = (sample_mode ? 1 : 0) + (a.sweep_beta.empty() ? 0 : 1) + (a.decay ? 1 : 0) + (a.w1r ? 1 : 0);
  if (modes != 1)
    throw DomainError("norms: choose one of --weak-l3/--lorentz/--lp, --sweep-beta, --decay or --w1r");
  json& cfg = rep.config();
  cfg["field"] = a.field.empty() ? json(nullptr) : json(a.field);

  if (sample_mode) {
    if (a.field.empty()) throw DomainError("norms: --field is required");
    if (a.domain.rfind("ball:", 0) != 0) throw DomainError("norms: --domain must be ball:R");
    const double R = parse_list(a.domain.substr(5)).at(0);
    require_positive(R, "ball radius");
    const std::vector<double> cells = parse_list(a.cells);
    const FieldSpec spec = parse_field(a.field);
    cfg["domain"] = a.domain;
    cfg["cells"] = cells;
    cfg["tol"] = a.tol;
    const auto samples = field_samples(spec, R, cells);
    json norms = json::array();
    auto emit = [&](const NormReport& n) {
      norms.push_back({{"norm", n.norm_id}, {"value", n.value}, {"samples", n.samples}, {"resolution", n.resolution}});
    };
    std::optional<double> weak;
    if (a.weak_l3) {
      const NormReport n = weak_l3_quasinorm(samples);
      weak = n.value;
      emit(n);
    }
    if (!a.lorentz.empty()) {
      const auto pq = parse_list(a.lorentz);
      if (pq.size() != 2) throw DomainError("norms: --lorentz takes p,q (q may be inf)");
      cfg["lorentz"] = {number(pq[0]), number(pq[1])};
      emit(lorentz_quasinorm(samples, pq[0], pq[1]));
    }
    if (a.lp) {
      cfg["lp"] = *a.lp;
      emit(lp_norm(samples, *a.lp));
    }
    rep.results()["norms"] = norms;
    std::optional<double> expect = a.expect;
    if (!expect && spec.inverse_radius && weak) expect = std::cbrt(4.0 * std::numbers::pi / 3.0);
    cfg["expect"] = expect ? json(*expect) : json(nullptr);
    if (expect && weak) {
      const double rel = std::abs(*weak - *expect) / *expect;
      rep.results()["expected_weak_l3"] = *expect;
      rep.results()["relative_error"] = rel;
      rep.check("weak_l3_match", rel, "<=", a.tol);
    }
    return;
  }

  if (!a.sweep_beta.empty()) {
    if (!a.sup_sphere) throw DomainError("norms: --sweep-beta currently supports --sup-sphere only");
    std::vector<double> parts;
    {
      std::string s = a.sweep_beta;
      std::replace(s.begin(), s.end(), ':', ',');
      parts = parse_list(s);
    }
    if (parts.size() != 3) throw DomainError("norms: --sweep-beta takes lo:hi:count");
    const double lo = parts[0], hi = parts[1];
    const int count = static_cast<int>(parts[2]);
    if (!(lo > 0.0) || !(hi >= lo) || count < 2 || parts[2] != count)
      throw DomainError("norms: --sweep-beta needs 0 < lo <= hi and an integer count >= 2");
    cfg["sweep_beta"] = {lo, hi, count};
    rep.table().columns = {"beta", "A", "sup_unit_sphere"};
    json rows = json::array();
    double prev = 0.0;
    int violations = 0;
    for (int k = 0; k < count; ++k) {
      const double beta = lo + (hi - lo) * k / (count - 1);
      const LandauParams p = LandauParams::from_beta(beta);
      const double sup = sup_speed_unit_sphere(p);
      if (sup < prev) ++violations;
      prev = sup;
      rows.push_back({{"beta", beta}, {"A", p.A()}, {"sup_unit_sphere", sup}});
      rep.table().rows.push_back({beta, p.A(), sup});
    }
    rep.results()["sweep"] = rows;
    rep.results()["violations"] = violations;
    rep.check("nondecreasing", violations, "<=", 0.0);
    return;
  }

  if (a.decay) {
    if (a.field.empty()) throw DomainError("norms: --field is required");
    if (a.ref.empty()) throw DomainError("norms: --decay needs --ref A=... or --ref beta=...");
    const FieldSpec spec = parse_field(a.field);
    const LandauParams ref = parse_landau_ref(a.ref);
    const std::vector<double> shells = parse_list(a.shells);
    cfg["ref"] = a.ref;
    cfg["q"] = a.q;
    cfg["shells"] = shells;
    cfg["decay_tol"] = a.decay_tol;
    cfg["n_theta"] = a.n_theta;
    cfg["n_phi"] = a.n_phi;
    const DecayReport d = decay_report(spec.field, ref, a.q, shells, {a.n_theta, a.n_phi});
    bool growing = d.weighted_sup.size() > 1;
    for (std::size_t i = 1; i < d.weighted_sup.size(); ++i)
      if (!(d.weighted_sup[i] > d.weighted_sup[i - 1]) || !(d.radii[i] < d.radii[i - 1])) growing = false;
    rep.results()["reference"] = params_json(ref);
    rep.results()["value"] = d.norm.value;
    rep.results()["norm"] = d.norm.norm_id;
    rep.results()["radii"] = d.radii;
    rep.results()["weighted_sup"] = d.weighted_sup;
    rep.results()["grows_as_shells_shrink"] = growing;
    rep.table().columns = {"R", "weighted_sup"};
    for (std::size_t i = 0; i < d.radii.size(); ++i) rep.table().rows.push_back({d.radii[i], d.weighted_sup[i]});
    rep.check("decay", d.norm.value, "<=", a.decay_tol);
    return;
  }

  // W^{1,r} of the field sampled at cell centres of a cube around the origin.
  if (a.field.empty()) throw DomainError("norms: --field is required");
  if (a.grid < 8) throw DomainError("norms: --grid must be >= 8");
  require_positive(a.box, "--box");
  const FieldSpec spec = parse_field(a.field);
  cfg["w1r"] = *a.w1r;
  cfg["grid"] = a.grid;
  cfg["box"] = a.box;
  const double h = a.box / a.grid;
  const Vec3 origin = Vec3(-0.5 * a.box + 0.5 * h, -0.5 * a.box + 0.5 * h, -0.5 * a.box + 0.5 * h);
  const auto probe = spec.field.probe;
  const GridField g = GridField::sample(static_cast<std::size_t>(a.grid), a.box, origin,
                                        [&probe](const Vec3& x) { return probe(x).u; });
  const NormReport n = sobolev_norm(g, *a.w1r, GridGradient::spectral);
  rep.results()["norms"] = json::array(
      {{{"norm", n.norm_id}, {"value", n.value}, {"samples", n.samples}, {"resolution", n.resolution}}});
}

// ---------------------------------------------------------------- driver

void write_output(const GlobalOptions& g, const Report& rep, std::ostream& out) {
  std::string body;
  if (g.format == "csv") {
    if (rep.table().columns.empty()) throw DomainError("this command has no CSV table; use --format json");
    body = rep.table().to_csv();
  } else {
    body = rep.to_json(!g.no_timing).dump(2) + "\n";
  }
  if (g.output.empty() || g.output == "-") {
    out << body;
  } else {
    std::ofstream f(g.output);
    if (!f) throw DomainError("cannot write '" + g.output + "'");
    f << body;
  }
  if (!g.csv.empty()) {
    if (rep.table().columns.empty()) throw DomainError("this command has no CSV table");
    std::ofstream f(g.csv);
    if (!f) throw DomainError("cannot write '" + g.csv + "'");
    f << rep.table().to_csv();
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landau solutions, point-force extraction and contraction diagnostics", "nssing"};
  app.set_version_flag("--version", NSSING_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("-o,--output", g.output, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--csv", g.csv, "Also write the command's CSV table to this file");
  app.add_option("--seed", g.seed, "Random seed (recorded in every report)");
  app.add_flag("--no-timing", g.no_timing, "Omit wall-clock timing from JSON reports");

  LandauArgs la;
  auto* landau = app.add_subcommand("landau", "Evaluate U, P, grad U and T of a Landau solution");
  landau->add_option("--A", la.A, "Shape parameter A > 1");
  landau->add_option("--beta", la.beta, "Force magnitude beta >= 0");
  landau->add_option("--axis", la.axis, "Force direction x,y,z");
  landau->add_option("--point", la.points, "Evaluation point x,y,z (repeatable)");
  landau->add_option("--points", la.points_file, "CSV file of x,y,z rows");

  FluxArgs fa;
  auto* flux = app.add_subcommand("flux", "Extract the point force by momentum-flux integrals");
  flux->add_option("--field", fa.field, "Field spec");
  flux->add_option("--radii", fa.radii, "Comma-separated sphere radii");
  flux->add_option("--n-theta", fa.n_theta, "Gauss-Legendre points in cos(theta)");
  flux->add_option("--n-phi", fa.n_phi, "Trapezoid points in phi");
  flux->add_option("--tol", fa.tol, "Tolerance on the pairwise relative deviation");
  flux->add_option("--force-tol", fa.force_tol, "Tolerance against the known force of a Landau field");
  flux->add_flag("--fd", fa.fd, "Use central-difference gradients (h = 1e-5 R)");

  auto* verify = app.add_subcommand("verify", "Distributional, pointwise and self-similarity checks");
  verify->require_subcommand(1);

  WeakArgs wa;
  auto* weak = verify->add_subcommand("weak", "Pair the field with a divergence-free test function");
  weak->add_option("--field", wa.field, "Field spec");
  weak->add_option("--center", wa.center, "Test-function center x,y,z");
  weak->add_option("--a", wa.a, "Plateau radius");
  weak->add_option("--b", wa.b, "Support radius");
  weak->add_option("--n-r", wa.n_r, "Radial Gauss points");
  weak->add_option("--n-theta", wa.n_theta, "Polar Gauss points");
  weak->add_option("--n-phi", wa.n_phi, "Azimuthal points");
  weak->add_option("--tol", wa.tol, "Relative tolerance when the origin lies in the support");
  weak->add_option("--zero-tol", wa.zero_tol, "Tolerance (times beta) when it does not");
  weak->add_option("--expect", wa.expect, "Expected force bx,by,bz for non-Landau fields");

  NsArgs na;
  auto* ns = verify->add_subcommand("ns", "Pointwise residual of the stationary equations");
  ns->add_option("--field", na.field, "Landau field spec");
  ns->add_option("--samples", na.samples, "Number of random points");
  ns->add_option("--rmin", na.rmin, "Smallest sample radius");
  ns->add_option("--rmax", na.rmax, "Largest sample radius");
  ns->add_option("--h-rel", na.h_rel, "Difference step relative to |x|");
  ns->add_option("--tol", na.tol, "Tolerance on max |x|^3 |residual|");

  SelfsimArgs sa;
  auto* selfsim = verify->add_subcommand("selfsim", "Discrete self-similarity under u -> lambda u(lambda x)");
  selfsim->add_option("--field", sa.field, "Field spec");
  selfsim->add_option("--lambda", sa.lambda, "Scaling factor in (0, 1)");
  selfsim->add_option("--samples", sa.samples, "Number of random points");
  selfsim->add_option("--rmin", sa.rmin, "Smallest sample radius");
  selfsim->add_option("--rmax", sa.rmax, "Largest sample radius");
  selfsim->add_option("--tol", sa.tol, "Tolerance on the relative deviation");

  PicardArgs pa;
  auto* picard = app.add_subcommand("picard", "Fixed-point iteration around a mollified Landau drift");
  picard->add_option("--amp", pa.amp, "Forcing amplitude");
  picard->add_option("--grid", pa.grid, "Grid points per axis (power of two >= 16)");
  picard->add_option("--r", pa.r, "Sobolev exponent in (1, 3)");
  picard->add_option("--delta-in", pa.delta_in, "Inner cutoff radius of the drift");
  picard->add_option("--delta-out", pa.delta_out, "Outer cutoff radius of the drift");
  picard->add_option("--A", pa.A, "Drift shape parameter");
  picard->add_option("--beta", pa.beta, "Drift force magnitude (default 1)");
  picard->add_option("--iters", pa.iters, "Maximum iterations");
  picard->add_option("--tol", pa.tol, "Stop when the increment drops below this");
  picard->add_option("--rho-max", pa.rho_max, "Pass threshold on the contraction ratios");
  picard->add_option("--sweep", pa.sweep, "Comma-separated forcing amplitudes for a ratio sweep");
  picard->add_flag("--single-start", pa.single_start, "Skip the second start");

  NormsArgs nm;
  auto* norms = app.add_subcommand("norms", "Lorentz norms, monotonicity sweep and decay diagnostic");
  norms->add_option("--field", nm.field, "Field spec");
  norms->add_flag("--weak-l3", nm.weak_l3, "Weak-L3 quasinorm of |u|");
  norms->add_option("--lorentz", nm.lorentz, "Lorentz L^{p,q} quasinorm, as p,q");
  norms->add_option("--lp", nm.lp, "Plain L^p norm");
  norms->add_option("--domain", nm.domain, "Sampling domain ball:R");
  norms->add_option("--cells", nm.cells, "n_r,n_theta,n_phi sampling cells");
  norms->add_option("--expect", nm.expect, "Expected weak-L3 value");
  norms->add_option("--tol", nm.tol, "Relative tolerance against --expect");
  norms->add_option("--sweep-beta", nm.sweep_beta, "lo:hi:count force magnitudes");
  norms->add_flag("--sup-sphere", nm.sup_sphere, "Tabulate sup |U^b| on the unit sphere");
  norms->add_flag("--decay", nm.decay, "Decay diagnostic against a reference Landau solution");
  norms->add_option("--ref", nm.ref, "Reference A=... or beta=...");
  norms->add_option("--q", nm.q, "Decay exponent q in (1, 3)");
  norms->add_option("--shells", nm.shells, "Comma-separated shell radii in (0, 1]");
  norms->add_option("--decay-tol", nm.decay_tol, "Pass threshold on the decay value");
  norms->add_option("--n-theta", nm.n_theta, "Polar points per shell");
  norms->add_option("--n-phi", nm.n_phi, "Azimuthal points per shell");
  norms->add_option("--w1r", nm.w1r, "Discrete W^{1,r} norm with this r");
  norms->add_option("--grid", nm.grid, "Grid points per axis for --w1r");
  norms->add_option("--box", nm.box, "Cube side for --w1r");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << NSSING_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "nssing: " << e.what() << "\n";
    return static_cast<int>(Exit::config_error);
  }

  std::string name;
  for (auto* sub : app.get_subcommands()) name = sub->get_name();
  if (name == "verify") name += " " + verify->get_subcommands().front()->get_name();
  Report rep(name);

  const auto start = std::chrono::steady_clock::now();
  try {
    if (landau->parsed()) cmd_landau(la, rep);
    else if (flux->parsed()) cmd_flux(fa, rep);
    else if (weak->parsed()) cmd_verify_weak(wa, rep);
    else if (ns->parsed()) cmd_verify_ns(na, g.seed, rep);
    else if (selfsim->parsed()) cmd_verify_selfsim(sa, g.seed, rep);
    else if (picard->parsed()) cmd_picard(pa, g.seed, rep);
    else if (norms->parsed()) cmd_norms(nm, rep);
    rep.config()["seed"] = g.seed;
    rep.set_duration(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    write_output(g, rep, out);
  } catch (const DomainError& e) {
    err << "nssing " << name << ": " << e.what() << "\n";
    return static_cast<int>(Exit::config_error);
  } catch (const std::exception& e) {
    err << "nssing " << name << ": numerical failure: " << e.what() << "\n";
    return static_cast<int>(Exit::numerical_failure);
  }
  if (rep.out_of_regime()) {
    err << "nssing " << name << ": iteration left the contraction regime\n";
    return static_cast<int>(Exit::out_of_regime);
  }
  return static_cast<int>(rep.passed() ? Exit::pass : Exit::fail);
}

}  // namespace nssing::cli
