#include "cosdyn/boettcher.hpp"

#include "cosdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cosdyn {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx sinc(cplx x) {
  if (std::abs(x) < 1e-4)
    return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// d/du log sinc(u/2)
cplx dlog_sinc_half(cplx u) {
  if (std::abs(u) < 1e-3)
    return -u / 12.0 - u * u * u / 720.0;
  return 0.5 / std::tan(0.5 * u) - 1.0 / u;
}

struct Series {
  double green = 0.0;     // sum of 2^-n log|sinc(u_n/2)|, without log|a z|
  cplx log_factor{0.0};   // same sum with principal complex logs
  cplx dlog{0.0};         // derivative of log_factor with respect to z
  bool hits_zero = false; // some u_n with n >= 1 is exactly 0
  bool branch_ok = true;
};

Series run_series(const Parameter& v, cplx z, const BoettcherOptions& opts, bool complex_part,
                  bool derivative) {
  opts.budget.validate();
  Series s;
  cplx u = z;
  cplx d{1.0, 0.0}; // d u_n / d z
  double weight = 1.0;
  for (int n = 0;; ++n) {
    if (std::abs(u) < opts.tail_cutoff) {
      if (u == cplx(0.0, 0.0) && n > 0)
        s.hits_zero = true;
      return s;
    }
    if (n > opts.budget.max_iter || !finite(u) || std::abs(u.imag()) > opts.budget.escape_imag)
      throw Error(ErrorCode::NotInBasin, "orbit does not converge to 0 within the budget");
    const cplx q = sinc(0.5 * u);
    s.green += weight * std::log(std::abs(q));
    if (complex_part) {
      if (!(q.real() > 0.0))
        s.branch_ok = false;
      s.log_factor += weight * std::log(q);
    }
    if (derivative) {
      s.dlog += weight * dlog_sinc_half(u) * d;
      d *= deriv(v, u);
    }
    u = eval(v, u);
    weight *= 0.5;
  }
}

cplx scale_of(const Parameter& v) { return -0.5 * v.value(); }

} // namespace

double green(const Parameter& v, cplx z, const BoettcherOptions& opts) {
  if (z == cplx(0.0, 0.0))
    return -std::numeric_limits<double>::infinity();
  const Series s = run_series(v, z, opts, false, false);
  if (s.hits_zero)
    return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(scale_of(v) * z)) + s.green;
}

cplx boettcher_coord(const Parameter& v, cplx z, const BoettcherOptions& opts) {
  return boettcher_jet(v, z, opts).value;
}

BoettcherJet boettcher_jet(const Parameter& v, cplx z, const BoettcherOptions& opts) {
  const cplx a = scale_of(v);
  if (z == cplx(0.0, 0.0))
    return {cplx(0.0, 0.0), a};
  const Series s = run_series(v, z, opts, true, true);
  if (!s.branch_ok)
    throw Error(ErrorCode::BranchAmbiguity,
                "an orbit point leaves the half-plane where the series branch is valid");
  if (s.hits_zero)
    return {cplx(0.0, 0.0), cplx(0.0, 0.0)};
  const cplx value = a * z * std::exp(s.log_factor);
  return {value, value * (1.0 / z + s.dlog)};
}

cplx phi0_unchecked(const Parameter& v, const BoettcherOptions& opts) {
  return boettcher_coord(v, v.critical_value(), opts);
}

cplx phiU_unchecked(const Parameter& v, int m, const BoettcherOptions& opts) {
  if (m < 1)
    throw Error(ErrorCode::InvalidArgument, "entry time must be >= 1");
  return boettcher_coord(v, iterate(v, v.critical_value(), m), opts);
}

cplx phi0(const Parameter& v, const ClassifyOptions& copts, const BoettcherOptions& opts) {
  const ParamClass c = classify(v, copts);
  if (c.kind != ParamKind::A)
    throw Error(ErrorCode::NotTypeA, std::string("parameter classifies as ") + to_string(c.kind));
  return phi0_unchecked(v, opts);
}

cplx phiU(const Parameter& v, int m, const ClassifyOptions& copts, const BoettcherOptions& opts) {
  if (m < 1)
    throw Error(ErrorCode::InvalidArgument, "entry time must be >= 1");
  const ParamClass c = classify(v, copts);
  if (c.kind != ParamKind::C)
    throw Error(ErrorCode::NotTypeC, std::string("parameter classifies as ") + to_string(c.kind));
  if (c.m != m)
    throw Error(ErrorCode::WrongEntryTime,
                "entry time is " + std::to_string(c.m) + ", not " + std::to_string(m));
  return phiU_unchecked(v, m, opts);
}

namespace {

bool newton_to(const Parameter& v, cplx target, cplx& z, const InternalRayOptions& opts,
               double& residual) {
  cplx w = z;
  for (int it = 0; it < opts.newton_max_steps; ++it) {
    BoettcherJet j;
    try {
      j = boettcher_jet(v, w, opts.boettcher);
    } catch (const Error&) {
      return false;
    }
    const cplx g = j.value - target;
    residual = std::abs(g);
    if (residual <= opts.newton_tol) {
      z = w;
      return true;
    }
    if (!finite(j.derivative) || j.derivative == cplx(0.0, 0.0))
      return false;
    cplx dz = g / j.derivative;
    const double cap = 0.5 * std::max(std::abs(w), 1e-6);
    if (std::abs(dz) > cap)
      dz *= cap / std::abs(dz);
    w -= dz;
  }
  return false;
}

} // namespace

RayTrace internal_ray(const Parameter& v, double theta, double r_max, int steps,
                      const InternalRayOptions& opts) {
  if (steps < 2 || !(opts.r0 > 0.0) || !(r_max > opts.r0) || !(r_max < 1.0))
    throw Error(ErrorCode::InvalidArgument, "internal ray needs 0 < r0 < r_max < 1 and steps >= 2");
  const cplx dir = std::polar(1.0, two_pi * theta);
  const cplx a = scale_of(v);

  RayTrace trace;
  double r = opts.r0;
  cplx z = opts.r0 * dir / a;
  double residual = 0.0;
  if (!newton_to(v, r * dir, z, opts, residual))
    throw Error(ErrorCode::ContinuationStall, "internal ray seed did not converge");
  trace.samples.push_back({r, z, residual});

  const double ratio = std::log(r_max / opts.r0);
  for (int i = 1; i < steps; ++i) {
    const double goal = opts.r0 * std::exp(ratio * i / (steps - 1));
    double h = goal - r;
    int halvings = 0;
    while (r < goal) {
      const double r_try = std::min(goal, r + h);
      cplx guess = z;
      try {
        const BoettcherJet j = boettcher_jet(v, z, opts.boettcher);
        if (j.derivative != cplx(0.0, 0.0))
          guess = z + (r_try - r) * dir / j.derivative;
      } catch (const Error&) {
      }
      if (newton_to(v, r_try * dir, guess, opts, residual)) {
        r = r_try;
        z = guess;
      } else {
        if (++halvings > opts.max_halvings) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "internal ray stalled; last good r = " << r;
          throw Error(ErrorCode::ContinuationStall, msg.str());
        }
        h *= 0.5;
      }
    }
    trace.samples.push_back({r, z, residual});
  }
  std::reverse(trace.samples.begin(), trace.samples.end());
  trace.t_end_lo = opts.r0;
  trace.t_end_hi = opts.r0;
  return trace;
}

} // namespace cosdyn
