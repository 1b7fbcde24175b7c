#include "cosdyn/family.hpp"

#include "cosdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cosdyn {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double scale_of(cplx z) { return std::max(1.0, std::abs(z)); }

// d f_v / d v = cos z - 1, in the half-angle form that stays accurate
// near the preimages of 0.
cplx dv_partial(cplx z) {
  const cplx s = std::sin(0.5 * z);
  return -2.0 * s * s;
}

} // namespace

Parameter::Parameter(cplx v) : v_(v) {
  if (!finite(v))
    throw Error(ErrorCode::InvalidArgument, "parameter must be finite");
  if (v == cplx(0.0, 0.0))
    throw Error(ErrorCode::InvalidArgument, "v = 0 is excluded from the family");
}

cplx eval(const Parameter& v, cplx z) {
  // v (cos z - 1) = -2 v sin^2(z/2)
  const cplx s = std::sin(0.5 * z);
  return -2.0 * v.value() * s * s;
}

cplx deriv(const Parameter& v, cplx z) { return -v.value() * std::sin(z); }

cplx second_deriv(const Parameter& v, cplx z) { return -v.value() * std::cos(z); }

cplx iterate(const Parameter& v, cplx z, int n) {
  for (int i = 0; i < n; ++i)
    z = eval(v, z);
  return z;
}

VJet iterate_with_dv(const Parameter& v, cplx z0, cplx dz0_dv, int n) {
  VJet j{z0, dz0_dv};
  for (int i = 0; i < n; ++i) {
    const cplx d = deriv(v, j.z);
    j.dz_dv = dv_partial(j.z) + d * j.dz_dv;
    j.z = eval(v, j.z);
  }
  return j;
}

CycleJet cycle_jet(const Parameter& v, cplx z, int p) {
  cplx a{1.0, 0.0};   // d z_n / d z_0
  cplx b{0.0, 0.0};   // d z_n / d v
  cplx a_z{0.0, 0.0}; // d a_n / d z_0
  cplx a_v{0.0, 0.0}; // d a_n / d v
  for (int i = 0; i < p; ++i) {
    const cplx d1 = deriv(v, z);
    const cplx d2 = second_deriv(v, z);
    const cplx d1_v = -std::sin(z);
    const cplx next_a_z = d2 * a * a + d1 * a_z;
    const cplx next_a_v = (d1_v + d2 * b) * a + d1 * a_v;
    b = dv_partial(z) + d1 * b;
    a = d1 * a;
    a_z = next_a_z;
    a_v = next_a_v;
    z = eval(v, z);
  }
  return CycleJet{z, a, b, a_z, a_v};
}

void OrbitBudget::validate() const {
  if (max_iter < 1)
    throw Error(ErrorCode::InvalidArgument, "orbit budget needs max_iter >= 1");
  if (convergence_radius && !(*convergence_radius > 0.0))
    throw Error(ErrorCode::InvalidArgument, "convergence radius must be positive");
  if (!(escape_imag > 0.0))
    throw Error(ErrorCode::InvalidArgument, "escape threshold must be positive");
  if (!(detect_tol > 0.0) || !(cycle_tol > 0.0) || newton_max_steps < 1)
    throw Error(ErrorCode::InvalidArgument, "cycle tolerances must be positive");
}

double default_convergence_radius(const Parameter& v) {
  return std::min(0.05, 1.0 / (4.0 * std::abs(v.value())));
}

double OrbitBudget::delta_for(const Parameter& v) const {
  return convergence_radius ? *convergence_radius : default_convergence_radius(v);
}

const char* to_string(Fate fate) {
  switch (fate) {
  case Fate::ConvergedToZero: return "ConvergedToZero";
  case Fate::AttractedCycle: return "AttractedCycle";
  case Fate::Escaped: return "Escaped";
  case Fate::Undecided: return "Undecided";
  }
  return "?";
}

Cycle find_cycle(const Parameter& v, cplx seed, int p, const CycleOptions& opts) {
  if (p < 1)
    throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
  cplx z = seed;
  bool converged = false;
  for (int step = 0; step <= opts.max_steps; ++step) {
    if (!finite(z))
      break;
    const CycleJet j = cycle_jet(v, z, p);
    const cplx g = j.value - z;
    if (!finite(g))
      break;
    if (std::abs(g) <= opts.tol * scale_of(z)) {
      converged = true;
      break;
    }
    const cplx den = j.d_dz - 1.0;
    if (std::abs(den) < 1e-14)
      throw Error(ErrorCode::DegenerateJacobian,
                  "multiplier of the period-" + std::to_string(p) + " map is numerically 1");
    cplx dz = g / den;
    // keep a single step from jumping across many translates
    const double cap = 4.0 * scale_of(z);
    if (std::abs(dz) > cap)
      dz *= cap / std::abs(dz);
    z -= dz;
    // stagnation at machine precision counts as convergence
    if (std::abs(dz) <= 4e-16 * scale_of(z)) {
      const double res = std::abs(iterate(v, z, p) - z);
      converged = res <= std::max(opts.tol, 1e3 * 2.2e-16 * std::abs(den) * scale_of(z)) * scale_of(z);
      break;
    }
  }
  if (!converged)
    throw Error(ErrorCode::NoConvergence,
                "Newton for a period-" + std::to_string(p) + " point did not converge");

  int period = p;
  if (opts.minimize_period) {
    for (int d = 1; d < p; ++d) {
      if (p % d != 0)
        continue;
      if (std::abs(iterate(v, z, d) - z) <= 1e3 * opts.tol * scale_of(z)) {
        period = d;
        break;
      }
    }
  }

  Cycle c;
  c.points.reserve(static_cast<std::size_t>(period));
  c.multiplier = cplx(1.0, 0.0);
  cplx w = z;
  for (int i = 0; i < period; ++i) {
    c.points.push_back(w);
    c.multiplier *= deriv(v, w);
    w = eval(v, w);
  }
  c.residual = std::abs(w - z);
  return c;
}

OrbitOutcome orbit(const Parameter& v, cplx z0, const OrbitBudget& budget) {
  budget.validate();
  const double delta = budget.delta_for(v);

  OrbitOutcome out;
  cplx z = z0;
  if (std::abs(z) < delta) {
    out.kind = Fate::ConvergedToZero;
    out.entry_index = 0;
    out.steps_used = 0;
    return out;
  }

  // Brent cycle detection: the tortoise jumps to the hare at powers of two.
  cplx tortoise = z;
  int power = 1;
  int lam = 0;
  CycleOptions copts;
  copts.tol = budget.cycle_tol;
  copts.max_steps = budget.newton_max_steps;

  for (int n = 1; n <= budget.max_iter; ++n) {
    z = eval(v, z);
    if (!finite(z) || std::abs(z.imag()) > budget.escape_imag) {
      out.kind = Fate::Escaped;
      out.steps_used = n;
      return out;
    }
    if (std::abs(z) < delta) {
      out.kind = Fate::ConvergedToZero;
      out.entry_index = n;
      out.steps_used = n;
      return out;
    }
    ++lam;
    if (std::abs(z - tortoise) <= budget.detect_tol * scale_of(z)) {
      try {
        Cycle c = find_cycle(v, z, lam, copts);
        bool accepted = std::abs(c.multiplier) < 1.0;
        for (const cplx& q : c.points) {
          if (std::abs(q) < delta ||
              std::abs(iterate(v, q, static_cast<int>(c.points.size())) - q) >
                  budget.cycle_tol * scale_of(q))
            accepted = false;
        }
        if (accepted) {
          out.kind = Fate::AttractedCycle;
          out.steps_used = n;
          out.period = static_cast<int>(c.points.size());
          out.multiplier = c.multiplier;
          out.cycle = std::move(c.points);
          out.renormalizable = true;
          return out;
        }
      } catch (const Error&) {
        // not a certifiable cycle yet; keep iterating
      }
      tortoise = z;
      power *= 2;
      lam = 0;
      continue;
    }
    if (lam == power) {
      tortoise = z;
      power *= 2;
      lam = 0;
    }
  }
  out.kind = Fate::Undecided;
  out.steps_used = budget.max_iter;
  return out;
}

} // namespace cosdyn
