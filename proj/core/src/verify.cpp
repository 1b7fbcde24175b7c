#include "cosdyn/verify.hpp"

#include "cosdyn/boettcher.hpp"
#include "cosdyn/components.hpp"
#include "cosdyn/csv.hpp"
#include "cosdyn/error.hpp"
#include "cosdyn/image.hpp"
#include "cosdyn/landmarks.hpp"
#include "cosdyn/rays.hpp"
#include "cosdyn/scan.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <ostream>
#include <random>
#include <sstream>

namespace cosdyn {

namespace {

class Report {
public:
  // |measured - expected| <= tolerance
  void near(const std::string& id, double expected, double measured, double tol) {
    rows_.push_back({id, expected, measured, tol, std::abs(measured - expected) <= tol});
  }
  // measured <= bound
  void at_most(const std::string& id, double bound, double measured) {
    rows_.push_back({id, bound, measured, 0.0, measured <= bound});
  }
  void flag(const std::string& id, bool ok) {
    rows_.push_back({id, 1.0, ok ? 1.0 : 0.0, 0.0, ok});
  }
  std::vector<CheckResult> take() { return std::move(rows_); }

private:
  std::vector<CheckResult> rows_;
};

ParamKind kind_of(cplx v, const ClassifyOptions& o = {}) {
  try {
    return classify(Parameter(v), o).kind;
  } catch (const Error&) {
    return ParamKind::Undecided;
  }
}

void imaginary_axis(Report& r) {
  double lo = 0.5, hi = 1.2;
  bool bracket = kind_of({0.0, lo}) == ParamKind::A && kind_of({0.0, hi}) == ParamKind::Escaping;
  while (bracket && hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    const ParamKind k = kind_of({0.0, mid});
    if (k == ParamKind::A)
      lo = mid;
    else if (k == ParamKind::Escaping)
      hi = mid;
    else
      bracket = false;
  }
  const double y0 = imaginary_axis_threshold();
  r.flag("imag_axis.bracket", bracket);
  r.near("imag_axis.y0_bisection", y0, 0.5 * (lo + hi), 1e-6);
  const Parameter v({0.0, y0});
  r.near("imag_axis.fixed_point", 0.0, std::abs(eval(v, v.critical_value()) - 2.0 * v.value()), 1e-12);
  r.near("imag_axis.multiplier_abs", y0 * 2.0 * std::sqrt(2.0), std::abs(deriv(v, 2.0 * v.value())), 1e-9);
}

void real_axis(Report& r) {
  const ParabolicLandmark L = real_axis_parabolic();
  r.near("real_axis.tan_residual", 0.0, std::tan(0.5 * L.z0) - L.z0, 1e-12);
  r.flag("real_axis.z0_range", L.z0 > -pi && L.z0 < -0.5 * pi);
  const Parameter v1(L.v1);
  r.near("real_axis.fixed", 0.0, std::abs(eval(v1, L.z0) - L.z0), 1e-9);
  r.near("real_axis.parabolic", 1.0, deriv(v1, L.z0).real(), 1e-9);
  r.flag("real_axis.flip_A_below", kind_of(L.v1 - 5e-4) == ParamKind::A);
  r.flag("real_axis.flip_nonA_above", kind_of(L.v1 + 5e-4) != ParamKind::A);
}

void small_disk(Report& r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rad(0.01, 0.199), ang(0.0, two_pi);
  int n_a = 0;
  for (int i = 0; i < 20; ++i)
    n_a += kind_of(std::polar(rad(rng), ang(rng))) == ParamKind::A;
  r.near("small_disk.all_A", 20, n_a, 0);
}

void phi0_asymptotic(Report& r) {
  double worst = 0.0, worst_sym = 0.0;
  bool ok = true;
  for (int i = 0; i < 8; ++i) {
    const cplx v = std::polar(0.01, two_pi * i / 8.0 + 0.1);
    try {
      const cplx p = phi0(Parameter(v));
      const cplx q = phi0(Parameter(-v));
      worst = std::max(worst, std::abs(p / (v * v) - 1.0));
      worst_sym = std::max(worst_sym, std::abs(std::abs(p) - std::abs(q)));
    } catch (const Error&) {
      ok = false;
    }
  }
  r.flag("phi0.evaluated", ok);
  r.at_most("phi0.relative_error", 10.0 * 1e-4, worst);
  r.at_most("phi0.even_modulus", 1e-9, worst_sym);
}

void basin_diameter(Report& r) {
  for (const cplx v : {cplx(10.0, 0.0), cplx(0.0, 10.0), cplx(50.0, 0.0), std::polar(50.0, 1.0)}) {
    const Parameter p(v);
    const double res = default_basin_resolution(p);
    const BasinApprox b = basin_flood_fill(p, res, default_basin_box(p));
    std::ostringstream id;
    id << "basin_diameter.v=" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
    r.at_most(id.str(), 8.0 * std::sqrt(2.0) / std::abs(v) + 2.0 * res,
              b.overflowed() ? INFINITY : b.diameter());
  }
}

void boettcher_battery(Report& r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_phi = 0.0, worst_green = 0.0;
  int samples = 0;
  for (const cplx vv : {cplx(0.1, 0.0), cplx(0.0, 0.5), cplx(1.0, 0.0), cplx(3.0, 3.0), cplx(-6.0, 2.0)}) {
    const Parameter v(vv);
    const cplx a = -0.5 * vv;
    int got = 0;
    for (int tries = 0; got < 100 && tries < 20000; ++tries) {
      const cplx w(u(rng), u(rng));
      if (std::abs(w) >= 0.9)
        continue;
      const cplx z = w / a;
      try {
        const cplx p = boettcher_coord(v, z);
        const cplx pf = boettcher_coord(v, eval(v, z));
        const double g = green(v, z);
        const double gf = green(v, eval(v, z));
        worst_phi = std::max(worst_phi, std::abs(pf - p * p));
        worst_green = std::max(worst_green, std::abs(gf - 2.0 * g));
        ++got;
      } catch (const Error&) {
      }
    }
    samples += got;
  }
  r.near("boettcher.samples", 500, samples, 0);
  r.at_most("boettcher.phi_square", 1e-8, worst_phi);
  r.at_most("boettcher.green_double", 1e-9, worst_green);
}

void ray_equations(Report& r, std::mt19937_64& rng) {
  const Parameter v(cplx(1.0, 0.5));
  double worst_res = 0.0, worst_depth = 0.0;
  bool ok = true;
  for (const char* text : {"(0,0)", "(1,-1)", "(0,1);(1,0)"}) {
    const ExternalAddress a = ExternalAddress::parse(text);
    try {
      const RayTrace tr = trace_dynamic_ray(v, a, 5.0, 2.0, 16);
      ok = ok && tr.samples.size() == 16;
      for (const RaySample& s : tr.samples) {
        worst_res = std::max(worst_res, s.residual);
        const RayPoint p = dynamic_ray_point(v, a, s.t);
        const RayPoint q = ray_point_at_depth(v, a, s.t, 2 * p.depth);
        worst_depth = std::max(worst_depth, std::abs(p.z - q.z));
      }
    } catch (const Error&) {
      ok = false;
    }
  }
  r.flag("rays.traced", ok);
  r.at_most("rays.shift_residual", 1e-7, worst_res);
  r.at_most("rays.depth_doubling", 1e-7, worst_depth);

  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_int_distribution<int> kk(-2, 2), jj(0, 1);
  double worst_inv = 0.0;
  int n = 0;
  for (int tries = 0; n < 1000 && tries < 100000; ++tries) {
    const cplx w(u(rng), u(rng));
    if (distance_to_slit(v, w) <= 10.0 * slit_margin(v))
      continue;
    const cplx z = inverse_branch(v, jj(rng), kk(rng), w);
    worst_inv = std::max(worst_inv, std::abs(eval(v, z) - w));
    ++n;
  }
  r.at_most("rays.right_inverse", 1e-10, worst_inv);
}

void parameter_rays(Report& r) {
  double worst = 0.0;
  bool ok = true;
  for (const char* text : {"(0,0)", "(1,0)", "(0,1)|(0,0)"}) {
    const ExternalAddress a = ExternalAddress::parse(text);
    const auto seed = seed_parameter_ray(a, 5.0, Rect::centered(8.0));
    if (!seed) {
      ok = false;
      continue;
    }
    try {
      const RayTrace tr = trace_parameter_ray(a, 5.0, 1.0, 24, *seed);
      ok = ok && !tr.failed_below;
      for (const RaySample& s : tr.samples)
        worst = std::max(worst, s.residual);
    } catch (const Error&) {
      ok = false;
    }
  }
  r.flag("pray.traced", ok);
  r.at_most("pray.identity", 1e-8, worst);
}

void type_d(Report& r) {
  const ParabolicLandmark L = real_axis_parabolic();
  std::optional<double> seed;
  for (int i = 1; i < 200 && !seed; ++i) {
    const double x = L.v1 + (3.0 - L.v1) * i / 200.0;
    const OrbitOutcome o = orbit(Parameter(x), -2.0 * x);
    if (o.kind == Fate::AttractedCycle && o.period == 1)
      seed = x;
  }
  r.flag("typeD.seed_found", seed.has_value());
  if (!seed)
    return;
  try {
    const Parameter c = find_center_typeD(Parameter(*seed), 1, -1);
    r.near("typeD.center_multiplier", 0.0, std::abs(multiplier_map(c, 1)), 1e-8);
    ComponentRecord rec{ParamKind::D, 0, -1, 1, c.value(), {}};
    const BoundaryTrace tr = trace_boundary(rec, 256);
    r.near("typeD.vertices", 256, static_cast<double>(tr.vertices.size()), 0);
    r.at_most("typeD.closure_over_step", 2.0, tr.closure_gap / tr.max_step);
    r.flag("typeD.simple", !find_self_intersection(tr.vertices).has_value());
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.vertices.size(); ++i) {
      const CycleJet j = cycle_jet(Parameter(tr.vertices[i]), tr.cycle_points[i], 1);
      worst = std::max(worst, std::abs(std::abs(j.d_dz) - 1.0));
    }
    r.at_most("typeD.unit_multiplier", 1e-8, worst);
  } catch (const Error& e) {
    r.flag(std::string("typeD.error.") + std::string(to_string(e.code())), false);
  }
}

// A pixels 4-connected to the pixel nearest 0.
bool a_connected(const FateGrid& g, bool& meets_small_disk) {
  std::vector<char> seen(g.cells.size(), 0);
  std::size_t total = 0;
  for (const auto& c : g.cells)
    total += c.kind == ParamKind::A;
  const int c0 = static_cast<int>((0.0 - g.bbox.x_min) / g.bbox.width() * g.width);
  const int r0 = static_cast<int>((g.bbox.y_max - 0.0) / g.bbox.height() * g.height);
  meets_small_disk = false;
  std::deque<std::pair<int, int>> q;
  for (int dc = -1; dc <= 0; ++dc)
    for (int dr = -1; dr <= 0; ++dr) {
      const int c = c0 + dc, rr = r0 + dr;
      if (c >= 0 && rr >= 0 && c < g.width && rr < g.height && g.at(c, rr).kind == ParamKind::A) {
        seen[static_cast<std::size_t>(rr * g.width + c)] = 1;
        q.emplace_back(c, rr);
      }
    }
  std::size_t reached = 0;
  while (!q.empty()) {
    const auto [c, rr] = q.front();
    q.pop_front();
    ++reached;
    const double x = g.bbox.x_min + (c + 0.5) * g.bbox.width() / g.width;
    const double y = g.bbox.y_max - (rr + 0.5) * g.bbox.height() / g.height;
    meets_small_disk = meets_small_disk || std::hypot(x, y) < 0.2;
    const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : nb) {
      const int nc = c + d[0], nr = rr + d[1];
      if (nc < 0 || nr < 0 || nc >= g.width || nr >= g.height)
        continue;
      const std::size_t idx = static_cast<std::size_t>(nr * g.width + nc);
      if (!seen[idx] && g.cells[idx].kind == ParamKind::A) {
        seen[idx] = 1;
        q.emplace_back(nc, nr);
      }
    }
  }
  return total > 0 && reached == total;
}

void figure_one(Report& r, const VerifyOptions& opts) {
  ScanConfig cfg;
  cfg.width = cfg.height = opts.scan_px;
  cfg.threads = opts.threads;
  const auto t0 = std::chrono::steady_clock::now();
  const FateGrid g = scan_parameter_plane(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.at_most("figure1.seconds", opts.scan_time_limit, secs);
  std::size_t n[5] = {0, 0, 0, 0, 0};
  for (const auto& c : g.cells)
    ++n[static_cast<int>(c.kind)];
  r.flag("figure1.has_A", n[0] > 0);
  r.flag("figure1.has_C", n[1] > 0);
  r.flag("figure1.has_D", n[2] > 0);
  r.flag("figure1.has_Escaping", n[3] > 0);
  bool meets = false;
  r.flag("figure1.A_connected", a_connected(g, meets));
  r.flag("figure1.A_meets_small_disk", meets);

  ScanConfig one = cfg;
  one.threads = 1;
  const FateGrid g1 = scan_parameter_plane(one);
  std::ostringstream a, b;
  write_param_csv(a, g);
  write_param_csv(b, g1);
  r.flag("figure1.deterministic_csv", a.str() == b.str());
  r.flag("figure1.deterministic_ppm", ppm_bytes(g, cfg.palette) == ppm_bytes(g1, cfg.palette));
}

void symmetry(Report& r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const cplx v(u(rng), u(rng));
    mismatches += kind_of(v) != kind_of(-v);
  }
  r.near("symmetry.mismatches", 0, mismatches, 0);
}

} // namespace

std::vector<CheckResult> verify_suite(const VerifyOptions& opts) {
  Report r;
  std::mt19937_64 rng(opts.seed);
  imaginary_axis(r);
  real_axis(r);
  small_disk(r, rng);
  phi0_asymptotic(r);
  basin_diameter(r);
  boettcher_battery(r, rng);
  ray_equations(r, rng);
  parameter_rays(r);
  type_d(r);
  if (opts.scan_px > 0)
    figure_one(r, opts);
  symmetry(r, rng);
  return r.take();
}

void write_report_csv(std::ostream& out, const std::vector<CheckResult>& report) {
  out << "check_id,expected,measured,tolerance,pass\n";
  for (const CheckResult& c : report)
    out << c.id << ',' << format_double(c.expected) << ',' << format_double(c.measured) << ','
        << format_double(c.tolerance) << ',' << (c.pass ? 1 : 0) << '\n';
}

bool all_passed(const std::vector<CheckResult>& report) {
  for (const CheckResult& c : report)
    if (!c.pass)
      return false;
  return true;
}

} // namespace cosdyn
