#include "cosdyn/components.hpp"

#include "cosdyn/error.hpp"
#include "cosdyn/geometry.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

namespace cosdyn {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

// Newton for a scalar equation h(v) = 0 with an analytic derivative.
template <class F>
cplx newton_in_v(cplx v, F&& h_and_dh, double tol, int max_steps) {
  for (int i = 0; i < max_steps; ++i) {
    if (v == cplx(0.0, 0.0) || !finite(v))
      break;
    const auto [h, dh] = h_and_dh(v);
    if (!finite(h) || !finite(dh))
      break;
    if (std::abs(h) <= tol)
      return v;
    if (dh == cplx(0.0, 0.0))
      throw Error(ErrorCode::DegenerateJacobian, "zero derivative in the center equation");
    cplx dv = h / dh;
    const double cap = 0.5 * std::max(1.0, std::abs(v));
    if (std::abs(dv) > cap)
      dv *= cap / std::abs(dv);
    v -= dv;
    if (std::abs(dv) <= 1e-16 * std::max(1.0, std::abs(v))) {
      const auto [h2, dh2] = h_and_dh(v);
      (void)dh2;
      if (std::abs(h2) <= 1e3 * tol)
        return v;
      break;
    }
  }
  throw Error(ErrorCode::NoConvergence, "center Newton did not converge");
}

} // namespace

Parameter find_center_typeC(const Parameter& seed, int m, std::optional<int> k,
                            const CenterOptions& opts) {
  if (m < 1)
    throw Error(ErrorCode::InvalidArgument, "entry time must be >= 1");
  const ParamClass sc = classify(seed, opts.classify);
  if (sc.kind != ParamKind::C)
    throw Error(ErrorCode::NotTypeC, std::string("seed classifies as ") + to_string(sc.kind));
  if (sc.m != m)
    throw Error(ErrorCode::WrongEntryTime,
                "seed entry time is " + std::to_string(sc.m) + ", not " + std::to_string(m));
  const int kk = k.value_or(sc.k);
  const double target = two_pi * kk;

  const cplx v = newton_in_v(
      seed.value(),
      [&](cplx w) {
        const VJet j = iterate_with_dv(Parameter(w), -2.0 * w, cplx(-2.0, 0.0), m - 1);
        return std::pair{j.z - target, j.dz_dv};
      },
      opts.tol * std::max(1.0, std::abs(target)), opts.max_steps);

  const Parameter center(v);
  const double res = std::abs(iterate(center, center.critical_value(), m));
  if (!(res <= 1e-10))
    throw Error(ErrorCode::NoConvergence, "center residual " + fmt(res) + " exceeds 1e-10");
  const ParamClass cc = classify(center, opts.classify);
  if (cc.kind != ParamKind::C || cc.m != m || cc.k != sc.k)
    throw Error(ErrorCode::ClassDrift, std::string("center classifies as ") + to_string(cc.kind) +
                                           " m=" + std::to_string(cc.m) +
                                           " k=" + std::to_string(cc.k));
  return center;
}

Parameter find_center_typeD(const Parameter& seed, int p, int k, const CenterOptions& opts) {
  if (p < 1)
    throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
  const double c = (2.0 * k + 1.0) * pi;
  const cplx v = newton_in_v(
      seed.value(),
      [&](cplx w) {
        const VJet j = iterate_with_dv(Parameter(w), cplx(c, 0.0), cplx(0.0, 0.0), p);
        return std::pair{j.z - c, j.dz_dv};
      },
      opts.tol * std::max(1.0, std::abs(c)), opts.max_steps);
  const Parameter center(v);
  cplx z(c, 0.0);
  for (int i = 0; i < p; ++i) {
    // an even critical point (or 0 itself) on the cycle means the orbit is
    // captured by the fixed point 0
    const double r = std::remainder(z.real(), two_pi);
    if (std::abs(cplx(r, z.imag())) < 1e-8)
      throw Error(ErrorCode::Collision, "cycle through the critical point meets 0 or 2j pi");
    z = eval(center, z);
  }
  return center;
}

cplx multiplier_map(const Parameter& v, int p, const OrbitBudget& budget) {
  const OrbitOutcome o = orbit(v, v.critical_value(), budget);
  if (o.kind != Fate::AttractedCycle)
    throw Error(ErrorCode::NotTypeD, std::string("critical orbit fate is ") + to_string(o.kind));
  if (o.period != p)
    throw Error(ErrorCode::NotTypeD, "attracting cycle has period " + std::to_string(o.period) +
                                         ", not " + std::to_string(p));
  return o.multiplier;
}

namespace {

struct PathState {
  cplx z; // cycle point (D only)
  cplx v;
  double residual = 0.0;
};

using Solver = std::function<bool(double, PathState&)>;
using Predictor = std::function<PathState(const PathState&, double, double)>;

// Moves the solution from parameter s to s_goal in as few steps as the
// corrector allows, halving the step on failure.
void advance(PathState& st, double& s, double s_goal, const Solver& solve, const Predictor& predict,
             int max_halvings, const char* what) {
  double h = s_goal - s;
  int halvings = 0;
  while (std::abs(s_goal - s) > 0.0) {
    const double s_try = std::abs(h) >= std::abs(s_goal - s) ? s_goal : s + h;
    PathState trial = predict(st, s, s_try);
    if (solve(s_try, trial)) {
      st = trial;
      s = s_try;
      // grow back after successes
      if (halvings > 0) {
        h *= 2.0;
        --halvings;
      }
    } else {
      if (++halvings > max_halvings)
        throw Error(ErrorCode::ContinuationStall,
                    std::string(what) + " continuation stalled at s = " + fmt(s));
      h *= 0.5;
    }
  }
}

BoundaryTrace finish(BoundaryTrace tr) {
  const std::size_t n = tr.vertices.size();
  for (std::size_t i = 1; i < n; ++i)
    tr.max_step = std::max(tr.max_step, std::abs(tr.vertices[i] - tr.vertices[i - 1]));
  tr.closure_gap = std::abs(tr.vertices.back() - tr.vertices.front());
  if (!(tr.closure_gap <= 2.0 * tr.max_step))
    throw Error(ErrorCode::ContinuationStall,
                "boundary trace does not close: gap " + fmt(tr.closure_gap) + ", step " +
                    fmt(tr.max_step));
  if (const auto hit = find_self_intersection(tr.vertices))
    throw Error(ErrorCode::SelfIntersection, "boundary edges " + std::to_string(hit->first) +
                                                 " and " + std::to_string(hit->second) + " cross");
  return tr;
}

// Solve f^p(z) = z, (f^p)'(z) = lambda for (z, v) by 2x2 Newton.
bool solve_cycle(int p, cplx lambda, PathState& st, const BoundaryOptions& opts) {
  for (int it = 0; it < opts.newton_max_steps; ++it) {
    if (!finite(st.z) || !finite(st.v) || st.v == cplx(0.0, 0.0))
      return false;
    const CycleJet j = cycle_jet(Parameter(st.v), st.z, p);
    const cplx f1 = j.value - st.z;
    const cplx f2 = j.d_dz - lambda;
    const double scale = std::max(1.0, std::abs(st.z));
    st.residual = std::max(std::abs(f1) / scale, std::abs(f2));
    if (std::abs(f1) <= opts.newton_tol * scale && std::abs(f2) <= opts.newton_tol)
      return true;
    const cplx a = j.d_dz - 1.0, b = j.d_dv, c = j.mult_dz, d = j.mult_dv;
    const cplx det = a * d - b * c;
    if (det == cplx(0.0, 0.0) || !finite(det))
      return false;
    const cplx dz = (d * f1 - b * f2) / det;
    const cplx dv = (a * f2 - c * f1) / det;
    if (std::abs(dz) > scale || std::abs(dv) > 0.5 * std::max(1.0, std::abs(st.v)))
      return false;
    st.z -= dz;
    st.v -= dv;
  }
  return false;
}

BoundaryTrace trace_type_d(const ComponentRecord& rec, int n, const BoundaryOptions& opts) {
  if (!rec.center || rec.p < 1)
    throw Error(ErrorCode::InvalidArgument, "type-D trace needs a center and a period");
  const int p = rec.p;
  auto lambda_at = [](double s) {
    // s in [0, 1]: radial from 0 to 1; s in [1, 2]: once around the circle
    return s <= 1.0 ? cplx(s, 0.0) : std::polar(1.0, two_pi * (s - 1.0));
  };
  Solver solve = [&](double s, PathState& st) { return solve_cycle(p, lambda_at(s), st, opts); };
  // Euler step along the tangent d(z, v)/d lambda = J^-1 (0, 1).
  Predictor predict = [&](const PathState& st, double s0, double s1) {
    const CycleJet j = cycle_jet(Parameter(st.v), st.z, p);
    const cplx a = j.d_dz - 1.0, b = j.d_dv, c = j.mult_dz, d = j.mult_dv;
    const cplx det = a * d - b * c;
    PathState out = st;
    if (det != cplx(0.0, 0.0) && finite(det)) {
      const cplx dl = lambda_at(s1) - lambda_at(s0);
      out.z += (-b * dl) / det;
      out.v += (a * dl) / det;
    }
    return out;
  };

  PathState st{cplx((2.0 * rec.k + 1.0) * pi, 0.0), *rec.center};
  if (!solve(0.0, st))
    throw Error(ErrorCode::ContinuationStall, "type-D trace: center does not solve the cycle system");
  double s = 0.0;
  advance(st, s, 1.0, solve, predict, opts.max_halvings, "radial");

  BoundaryTrace tr;
  tr.vertices.push_back(st.v);
  tr.cycle_points.push_back(st.z);
  tr.t.push_back(0.0);
  tr.residuals.push_back(st.residual);
  const PathState first = st;
  for (int i = 1; i <= n; ++i) {
    advance(st, s, 1.0 + static_cast<double>(i) / n, solve, predict, opts.max_halvings, "boundary");
    if (i == n)
      break;
    tr.vertices.push_back(st.v);
    tr.cycle_points.push_back(st.z);
    tr.t.push_back(static_cast<double>(i) / n);
    tr.residuals.push_back(st.residual);
  }
  // one full turn of the multiplier must come back to the starting vertex
  if (std::abs(st.v - first.v) > 1e-6 * std::max(1.0, std::abs(first.v)))
    throw Error(ErrorCode::ContinuationStall,
                "type-D trace came back to a different point after one turn");
  return finish(std::move(tr));
}

// The A/C boundary is approximated by the level set |Phi| = 1 - eps, which is
// the level set g(v) = log(1 - eps) of the real function
//   g(v) = G_v(-2v)       (type A)
//   g(v) = G_v(f^m(-2v))  (type C).
// Working with g avoids branch choices in Phi. The curve is followed by
// arc-length continuation and then resampled.
class LevelCurve {
public:
  LevelCurve(const ComponentRecord& rec, const BoundaryOptions& opts)
      : rec_(rec), opts_(opts), level_(std::log1p(-opts.eps)) {
    bopts_ = opts.boettcher;
    bopts_.budget = opts.level_budget;
  }

  double level() const { return level_; }

  // nullopt when the critical orbit does not converge to 0
  std::optional<double> g(cplx v) const {
    if (v == cplx(0.0, 0.0) || !finite(v))
      return std::nullopt;
    try {
      const Parameter par(v);
      const cplx z = rec_.kind == ParamKind::A ? par.critical_value()
                                               : iterate(par, par.critical_value(), rec_.m);
      const double val = green(par, z, bopts_);
      if (!std::isfinite(val))
        return -1e300;
      return val;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  std::optional<cplx> gradient(cplx v, double h) const {
    const auto xp = g(v + h), xm = g(v - h);
    const auto yp = g(v + cplx(0.0, h)), ym = g(v - cplx(0.0, h));
    if (!xp || !xm || !yp || !ym)
      return std::nullopt;
    const cplx grad((*xp - *xm) / (2.0 * h), (*yp - *ym) / (2.0 * h));
    if (!finite(grad) || grad == cplx(0.0, 0.0))
      return std::nullopt;
    return grad;
  }

  // Newton along the gradient back onto the level set.
  bool correct(cplx& v, double fd, double max_move, double& residual) const {
    const cplx v0 = v;
    for (int it = 0; it < opts_.newton_max_steps; ++it) {
      const auto val = g(v);
      if (!val)
        return false;
      residual = std::abs(*val - level_);
      if (residual <= opts_.level_tol)
        return std::abs(v - v0) <= max_move;
      const auto grad = gradient(v, fd);
      if (!grad)
        return false;
      v -= (*val - level_) * *grad / std::norm(*grad);
      if (std::abs(v - v0) > max_move)
        return false;
    }
    return false;
  }

private:
  const ComponentRecord& rec_;
  const BoundaryOptions& opts_;
  BoettcherOptions bopts_;
  double level_;
};

BoundaryTrace trace_level_curve(const ComponentRecord& rec, int n, const BoundaryOptions& opts) {
  if (!(opts.eps > 0.0 && opts.eps < 1.0))
    throw Error(ErrorCode::InvalidArgument, "level offset eps must lie in (0, 1)");
  const bool type_a = rec.kind == ParamKind::A;
  if (!type_a && (!rec.center || rec.m < 1))
    throw Error(ErrorCode::InvalidArgument, "type-C trace needs a center and an entry time");
  const LevelCurve curve(rec, opts);
  const double L = curve.level();

  // March outward from the center (0 for type A) along the positive real
  // direction until g passes the level, then bisect. g grows away from the
  // center, so a drop means the march jumped into another component.
  const cplx c = type_a ? cplx(0.0, 0.0) : *rec.center;
  double s_in = 1e-6 * std::max(1.0, std::abs(c));
  const auto g_start = curve.g(c + s_in);
  if (!g_start || !(*g_start < L))
    throw Error(ErrorCode::ContinuationStall, "level curve: no interior point next to the center");
  double g_in = *g_start;
  auto inside_after = [&](double s, double g_prev) {
    const auto val = curve.g(c + s);
    return val && *val < L && *val > g_prev;
  };
  double s_out = s_in;
  while (true) {
    s_out = 1.05 * s_in;
    if (s_out > 1e3 * std::max(1.0, std::abs(c)))
      throw Error(ErrorCode::ContinuationStall, "level curve: component looks unbounded");
    if (!inside_after(s_out, g_in))
      break;
    s_in = s_out;
    g_in = *curve.g(c + s_in);
  }
  for (int i = 0; i < 200 && s_out - s_in > 1e-15 * std::max(1.0, s_out); ++i) {
    const double mid = 0.5 * (s_in + s_out);
    if (inside_after(mid, g_in)) {
      s_in = mid;
      g_in = *curve.g(c + s_in);
    } else {
      s_out = mid;
    }
  }
  const double radius = s_in;
  const double fd = 1e-7 * std::max(1.0, std::abs(c) + radius);
  cplx start = c + s_in;
  double residual = 0.0;
  if (!curve.correct(start, fd, 0.1 * radius, residual))
    throw Error(ErrorCode::ContinuationStall, "level curve: start point does not converge");

  // Arc-length continuation, counterclockwise around the center.
  const double h_max = 0.02 * radius;
  const double h_min = 1e-10 * radius;
  double h = 0.25 * h_max;
  std::vector<cplx> path{start};
  double farthest = 0.0;
  cplx cur = start;
  const std::size_t max_points = 4'000'000;
  while (true) {
    const auto grad = curve.gradient(cur, fd);
    if (!grad)
      throw Error(ErrorCode::ContinuationStall, "level curve: gradient lost at " + fmt(cur.real()) +
                                                    "," + fmt(cur.imag()));
    const cplx tangent = cplx(0.0, 1.0) * *grad / std::abs(*grad);
    cplx next = cur + h * tangent;
    double res = 0.0;
    bool ok = curve.correct(next, fd, 0.5 * h, res);
    if (ok) {
      const auto g2 = curve.gradient(next, fd);
      ok = g2 && std::abs(std::arg(*g2 / *grad)) < 0.2;
    }
    // the chord must stay close to the level set, otherwise the corrector
    // may have landed on a nearby loop of another component
    for (double w : {0.25, 0.5, 0.75}) {
      if (!ok)
        break;
      const auto val = curve.g(cur + w * (next - cur));
      ok = val && std::abs(*val - L) <= 0.1 * std::abs(*grad) * h;
    }
    if (!ok) {
      h *= 0.5;
      if (h < h_min)
        throw Error(ErrorCode::ContinuationStall, "level curve: step underflow after " +
                                                      std::to_string(path.size()) + " points");
      continue;
    }
    cur = next;
    const double from_start = std::abs(cur - start);
    if (farthest > 4.0 * h && from_start <= 1.5 * h)
      break;
    farthest = std::max(farthest, from_start);
    path.push_back(cur);
    if (path.size() > max_points)
      throw Error(ErrorCode::ContinuationStall, "level curve: too many steps without closing");
    h = std::min(h_max, 1.5 * h);
  }

  // Resample to n vertices evenly spaced in arc length and correct each.
  std::vector<double> arc(path.size() + 1, 0.0);
  for (std::size_t i = 1; i <= path.size(); ++i)
    arc[i] = arc[i - 1] + std::abs(path[i % path.size()] - path[i - 1]);
  const double total = arc.back();
  BoundaryTrace tr;
  tr.level = 1.0 - opts.eps;
  std::size_t seg = 0;
  for (int i = 0; i < n; ++i) {
    const double target = total * i / n;
    while (arc[seg + 1] < target)
      ++seg;
    const double w = (target - arc[seg]) / std::max(arc[seg + 1] - arc[seg], 1e-300);
    cplx v = path[seg] + w * (path[(seg + 1) % path.size()] - path[seg]);
    const double spacing = std::max(arc[seg + 1] - arc[seg], h_min);
    if (!curve.correct(v, fd, spacing, residual))
      throw Error(ErrorCode::ContinuationStall, "level curve: resampled vertex does not converge");
    tr.vertices.push_back(v);
    tr.t.push_back(static_cast<double>(i) / n);
    tr.residuals.push_back(residual);
  }
  return finish(std::move(tr));
}

} // namespace

BoundaryTrace trace_boundary(const ComponentRecord& record, int n_vertices,
                             const BoundaryOptions& opts) {
  if (n_vertices < 3)
    throw Error(ErrorCode::InvalidArgument, "a boundary trace needs at least 3 vertices");
  switch (record.kind) {
  case ParamKind::D: return trace_type_d(record, n_vertices, opts);
  case ParamKind::A:
  case ParamKind::C: return trace_level_curve(record, n_vertices, opts);
  default: throw Error(ErrorCode::InvalidArgument, "component kind must be A, C or D");
  }
}

} // namespace cosdyn
