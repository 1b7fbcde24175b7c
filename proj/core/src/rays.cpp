#include "cosdyn/rays.hpp"

#include "cosdyn/error.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

namespace cosdyn {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr int full_depth = INT_MAX / 4;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double distance_to_segment(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0)
    return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

void require_labeled(const Parameter& v) {
  if (v.value().imag() == 0.0 && v.value().real() < 0.0)
    throw Error(ErrorCode::BranchFailure, "strips are not labeled for v on the negative real axis");
}

// Real part of the preimage curve of [0, +inf) through 0, at height y.
double strip_edge(const Parameter& v, double y) {
  const double alpha = std::arg(v.value());
  return 2.0 * std::atan(std::tanh(0.5 * y) * std::tan(0.5 * alpha));
}

cplx into_strip(const Parameter& v, int k, cplx z) {
  const double kappa = std::floor((z.real() - strip_edge(v, z.imag())) / two_pi);
  return z + two_pi * (k - kappa);
}

std::string t_message(const char* what, double t) {
  std::ostringstream s;
  s.precision(17);
  s << what << t;
  return s.str();
}

} // namespace

double potential_F(double t) { return std::expm1(t); }

double F_iter(int n, double t) {
  if (n < 0)
    throw Error(ErrorCode::InvalidArgument, "F_iter needs n >= 0");
  for (int i = 0; i < n && std::isfinite(t); ++i)
    t = std::expm1(t);
  return t;
}

int overflow_index(double t) {
  if (!(t > 0.0))
    throw Error(ErrorCode::InvalidArgument, "potential must be positive");
  int n = 0;
  while (std::isfinite(t)) {
    t = std::expm1(t);
    if (++n > 100000000)
      throw Error(ErrorCode::InvalidArgument, "potential too small to iterate");
  }
  return n;
}

double slit_margin(const Parameter& v) { return 1e-6 * (1.0 + std::abs(v.value())); }

double distance_to_slit(const Parameter& v, cplx w) {
  const double d_ray = w.real() >= 0.0 ? std::abs(w.imag()) : std::abs(w);
  return std::min(d_ray, distance_to_segment(w, v.critical_value(), 0.0));
}

bool in_half_strip(const Parameter& v, int j, int k, cplx z) {
  if (j == 0 ? !(z.imag() > 0.0) : !(z.imag() < 0.0))
    return false;
  const double x = z.real() - strip_edge(v, z.imag());
  return x >= two_pi * k && x <= two_pi * (k + 1);
}

cplx inverse_branch_log(const Parameter& v, int j, int k, cplx log_w) {
  require_labeled(v);
  cplx z = I * (log_w + std::log(2.0) - std::log(v.value()));
  if (j == 1)
    z = -z;
  return into_strip(v, k, z);
}

cplx inverse_branch(const Parameter& v, int j, int k, cplx w) {
  if (j != 0 && j != 1)
    throw Error(ErrorCode::InvalidArgument, "branch index j must be 0 or 1");
  require_labeled(v);
  if (!finite(w))
    throw Error(ErrorCode::InvalidArgument, "inverse branch of a non-finite point");
  if (distance_to_slit(v, w) <= slit_margin(v))
    throw Error(ErrorCode::OnSlit, "point lies within the slit margin");
  const cplx W = -w / (2.0 * v.value());
  if (std::abs(W) > 1e16)
    return inverse_branch_log(v, j, k, std::log(w));
  cplx z = 2.0 * std::asin(std::sqrt(W));
  if (z.imag() == 0.0)
    throw Error(ErrorCode::BranchFailure, "preimage on the real axis");
  if ((z.imag() > 0.0) != (j == 0))
    z = -z;
  return into_strip(v, k, z);
}

RayPoint ray_point_at_depth(const Parameter& v, const ExternalAddress& a, double t, int N) {
  if (N < 0)
    throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  const int o = overflow_index(t);
  const int depth = std::min(N, o + 1);

  // F^n(t) for n < o is finite.
  double cur = t;
  for (int i = 0; i < std::min(depth, o - 1); ++i)
    cur = std::expm1(cur);

  cplx z;
  int n = depth;
  try {
    if (depth < o) {
      const Symbol s = a[static_cast<std::size_t>(depth)];
      z = inverse_branch(v, s.j, s.k, cplx(-cur, 0.0));
    } else {
      // cur = F^{o-1}(t); log F^o(t) without forming it.
      const double ell = cur + std::log1p(-std::exp(-cur));
      cplx log_w;
      if (depth == o) {
        log_w = {ell, pi};
      } else {
        const Symbol outer = a[static_cast<std::size_t>(o + 1)];
        log_w = {ell, outer.j == 0 ? 0.5 * pi : -0.5 * pi};
        n = o;
      }
      const Symbol s = a[static_cast<std::size_t>(n)];
      z = inverse_branch_log(v, s.j, s.k, log_w);
    }
    for (int i = n - 1; i >= 0; --i) {
      const Symbol s = a[static_cast<std::size_t>(i)];
      z = inverse_branch(v, s.j, s.k, z);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OnSlit)
      throw Error(ErrorCode::SlitCollision, t_message("ray composition hits the slit at t = ", t));
    throw;
  }
  return {z, depth, 0.0};
}

RayPoint dynamic_ray_point(const Parameter& v, const ExternalAddress& a, double t, int N,
                           const RayOptions& opts) {
  int depth = std::max(1, N > 0 ? N : opts.start_depth);
  RayPoint p = ray_point_at_depth(v, a, t, depth);
  for (;;) {
    RayPoint q = ray_point_at_depth(v, a, t, 2 * depth);
    q.cauchy = p.depth == q.depth ? 0.0 : std::abs(p.z - q.z);
    if (q.cauchy <= opts.ray_tol)
      return q;
    if (2 * depth >= opts.max_depth)
      throw Error(ErrorCode::NoConvergence, t_message("ray truncation does not settle at t = ", t));
    depth *= 2;
    p = q;
  }
}

double shift_residual(const Parameter& v, const ExternalAddress& a, double t, const RayPoint& p) {
  const double Ft = potential_F(t);
  if (!std::isfinite(Ft))
    throw Error(ErrorCode::Overflow, "F(t) overflows");
  const cplx rhs = ray_point_at_depth(v, a.shift(), Ft, std::max(0, p.depth - 1)).z;
  return std::abs(eval(v, p.z) - rhs) / std::max(1.0, std::abs(rhs));
}

namespace {

std::vector<double> potentials(double t_hi, double t_lo, int steps) {
  if (!(t_hi > t_lo) || !(t_lo > 0.0) || steps < 2)
    throw Error(ErrorCode::InvalidArgument, "ray needs t_hi > t_lo > 0 and steps >= 2");
  std::vector<double> ts(static_cast<std::size_t>(steps));
  const double r = std::log(t_lo / t_hi);
  for (int i = 0; i < steps; ++i)
    ts[static_cast<std::size_t>(i)] = t_hi * std::exp(r * i / (steps - 1));
  ts.back() = t_lo;
  return ts;
}

// Landing by a Cauchy tail and the domain-end bracket.
void finish_trace(RayTrace& tr, const RayOptions& opts) {
  const auto& s = tr.samples;
  const std::size_t n = s.size();
  std::size_t settled = n; // first index of the settled tail
  while (settled > 1 &&
         std::abs(s[settled - 1].z - s[settled - 2].z) <=
             opts.landing_tol * std::max(1.0, std::abs(s[n - 1].z)))
    --settled;
  const std::size_t tail = n - settled + 1;
  if (n >= 2 && tail >= static_cast<std::size_t>(std::max(2, opts.landing_tail))) {
    tr.landed = true;
    tr.landing_candidate = s.back().z;
    tr.t_end_hi = s[settled - 1].t;
    tr.t_end_lo = tr.failed_below ? tr.t_end_lo : 0.0;
  } else if (!tr.failed_below) {
    tr.t_end_lo = 0.0;
    tr.t_end_hi = s.back().t;
  }
}

double orbit_gap(const Parameter& v, cplx z, int pre, int q) {
  const cplx a = iterate(v, z, pre);
  const cplx b = iterate(v, a, q);
  return std::abs(b - a) / std::max(1.0, std::abs(a));
}

} // namespace

RayTrace trace_dynamic_ray(const Parameter& v, const ExternalAddress& a, double t_hi, double t_lo,
                           int steps, const RayOptions& opts) {
  const std::vector<double> ts = potentials(t_hi, t_lo, steps);
  RayTrace tr;
  int depth = opts.start_depth;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    try {
      const RayPoint p = dynamic_ray_point(v, a, ts[i], depth, opts);
      depth = std::max(depth, p.depth);
      tr.truncation_depth = std::max(tr.truncation_depth, p.depth);
      tr.samples.push_back({ts[i], p.z, shift_residual(v, a, ts[i], p)});
    } catch (const Error&) {
      if (i == 0)
        throw;
      tr.failed_below = ts[i - 1];
      tr.t_end_lo = ts[i];
      tr.t_end_hi = ts[i - 1];
      break;
    }
  }
  finish_trace(tr, opts);
  if (tr.landed) {
    const int pre = static_cast<int>(a.preperiod().size());
    const int q = static_cast<int>(a.period().size());
    // The truncated composition converges slowly at small potential; the
    // candidate is polished on the (pre)periodic point it should be close to.
    const cplx z = *tr.landing_candidate;
    const double near = 1e-5 * std::max(1.0, std::abs(z));
    try {
      if (pre == 0) {
        const Cycle c = find_cycle(v, z, q, {.minimize_period = false});
        if (std::abs(c.points.front() - z) <= near && orbit_gap(v, c.points.front(), 0, q) <= 1e-7) {
          tr.landing_candidate = c.points.front();
          tr.landing_verified = true;
        }
      } else {
        const cplx w = iterate(v, z, pre);
        const Cycle c = find_cycle(v, w, q, {.minimize_period = false});
        tr.landing_verified = std::abs(c.points.front() - w) <= near * std::max(1.0, std::abs(w));
      }
    } catch (const Error&) {
    }
  }
  return tr;
}

cplx parameter_ray_defect(const ExternalAddress& a, double t, const Parameter& v) {
  return ray_point_at_depth(v, a, t, full_depth).z + 2.0 * v.value();
}

namespace {

std::optional<cplx> try_defect(const ExternalAddress& a, double t, cplx v) {
  try {
    const cplx d = parameter_ray_defect(a, t, Parameter(v));
    if (finite(d))
      return d;
  } catch (const Error&) {
  }
  return std::nullopt;
}

} // namespace

Parameter parameter_ray_point(const ExternalAddress& a, double t, const Parameter& v_seed,
                              const RayOptions& opts) {
  cplx v = v_seed.value();
  for (int it = 0; it < opts.newton_max_steps; ++it) {
    const auto h = try_defect(a, t, v);
    if (!h)
      throw Error(ErrorCode::Collision, "parameter Newton left the region where the ray is defined");
    if (std::abs(*h) <= opts.newton_tol)
      return Parameter(v);
    const double eps = 1e-7 * std::max(1.0, std::abs(v));
    const auto hp = try_defect(a, t, v + eps);
    const auto hm = try_defect(a, t, v - eps);
    if (!hp || !hm)
      throw Error(ErrorCode::Collision, "parameter Newton stencil crosses the slit-failure region");
    const cplx d = (*hp - *hm) / (2.0 * eps);
    if (d == cplx(0.0, 0.0) || !finite(d))
      throw Error(ErrorCode::DegenerateJacobian, "vanishing derivative in parameter Newton");
    cplx dv = *h / d;
    const double cap = 0.25 * std::max(1.0, std::abs(v));
    if (std::abs(dv) > cap)
      dv *= cap / std::abs(dv);
    v -= dv;
    if (v == cplx(0.0, 0.0))
      throw Error(ErrorCode::Collision, "parameter Newton reached v = 0");
  }
  throw Error(ErrorCode::NoConvergence, t_message("parameter ray Newton did not converge at t = ", t));
}

std::optional<Parameter> seed_parameter_ray(const ExternalAddress& a, double t, const Rect& box,
                                            int grid, const RayOptions& opts) {
  if (grid < 1 || box.degenerate())
    throw Error(ErrorCode::InvalidArgument, "seed search needs a grid and a non-degenerate box");
  std::vector<std::pair<double, cplx>> cells;
  for (int r = 0; r < grid; ++r)
    for (int c = 0; c < grid; ++c) {
      const cplx v{box.x_min + (c + 0.5) * box.width() / grid,
                   box.y_min + (r + 0.5) * box.height() / grid};
      if (v == cplx(0.0, 0.0))
        continue;
      if (const auto h = try_defect(a, t, v))
        cells.emplace_back(std::abs(*h), v);
    }
  std::sort(cells.begin(), cells.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < std::min<std::size_t>(cells.size(), 8); ++i) {
    try {
      return parameter_ray_point(a, t, Parameter(cells[i].second), opts);
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

RayTrace trace_parameter_ray(const ExternalAddress& a, double t_hi, double t_lo, int steps,
                             const Parameter& v_seed, const RayOptions& opts) {
  const std::vector<double> ts = potentials(t_hi, t_lo, steps);
  RayTrace tr;
  cplx v = parameter_ray_point(a, ts[0], v_seed, opts).value();
  cplx v_prev = v;
  double t = ts[0], t_prev = ts[0];
  auto record = [&](double tt, cplx vv) {
    tr.samples.push_back({tt, vv, std::abs(parameter_ray_defect(a, tt, Parameter(vv)))});
    tr.truncation_depth = std::max(tr.truncation_depth, overflow_index(tt) + 1);
  };
  record(t, v);

  for (std::size_t i = 1; i < ts.size() && !tr.failed_below; ++i) {
    const double goal = ts[i];
    double h = std::log(goal / t);
    int halvings = 0;
    while (t > goal) {
      const double t_try = std::max(goal, t * std::exp(h));
      cplx guess = v;
      if (t_prev != t)
        guess = v + (v - v_prev) * (std::log(t_try / t) / std::log(t / t_prev));
      try {
        const cplx vn = parameter_ray_point(a, t_try, Parameter(guess), opts).value();
        v_prev = v;
        t_prev = t;
        v = vn;
        t = t_try;
      } catch (const Error&) {
        if (++halvings > opts.max_halvings) {
          tr.failed_below = t;
          tr.t_end_lo = t_try;
          tr.t_end_hi = t;
          break;
        }
        h *= 0.5;
      }
    }
    if (!tr.failed_below)
      record(t, v);
  }

  finish_trace(tr, opts);
  if (tr.landed) {
    const Parameter vs(*tr.landing_candidate);
    const cplx c = vs.critical_value();
    if (!a.periodic()) {
      for (int pre = 1; pre <= 12 && !tr.landing_verified; ++pre)
        for (int q = 1; q <= 12 && !tr.landing_verified; ++q)
          tr.landing_verified = orbit_gap(vs, c, pre, q) <= 1e-6 && orbit_gap(vs, c, 0, q) > 1e-6;
    } else {
      try {
        const cplx z = dynamic_ray_point(vs, a, tr.samples.back().t, 0, opts).z;
        const Cycle cyc = find_cycle(vs, z, static_cast<int>(a.period().size()));
        tr.landing_verified = std::abs(cyc.multiplier - 1.0) <= 1e-2;
      } catch (const Error&) {
      }
    }
  }
  return tr;
}

} // namespace cosdyn
