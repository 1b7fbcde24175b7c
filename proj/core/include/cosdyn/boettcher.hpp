#pragma once

// Green function and Boettcher coordinate of the basin of 0, and the
// parameterizations of hyperbolic components built on them.
//
// Near 0 the map is f_v(z) = a z^2 + O(z^4) with a = -v/2, so the coordinate
// is normalized as phi_v(z) = a z + O(z^3), phi_v(f_v(z)) = phi_v(z)^2. With
// u_n = f^n(z) it is evaluated as
//
//   phi_v(z) = a z * prod_n r_n^(2^-(n+1)),   r_n = sinc(u_n / 2)^2,
//
// where the ratios r_n = a u_{n+1} / (a u_n)^2 do not depend on v. Each
// factor uses the principal branch of sinc(u/2)^(2^-n), which is only
// trusted while Re sinc(u_n/2) > 0.

#include "cosdyn/classify.hpp"
#include "cosdyn/family.hpp"
#include "cosdyn/ray_trace.hpp"

namespace cosdyn {

struct BoettcherOptions {
  OrbitBudget budget;
  // The series stops once |u_n| falls below this.
  double tail_cutoff = 1e-8;
};

// Limit of 2^-n log|a f^n(z)|. Throws NotInBasin when the orbit does not
// converge to 0 within the budget. Returns -inf on preimages of 0.
double green(const Parameter& v, cplx z, const BoettcherOptions& opts = {});

// Throws NotInBasin, or BranchAmbiguity when some orbit point leaves the
// region where the principal-branch series is valid.
cplx boettcher_coord(const Parameter& v, cplx z, const BoettcherOptions& opts = {});

struct BoettcherJet {
  cplx value;
  cplx derivative;
};
BoettcherJet boettcher_jet(const Parameter& v, cplx z, const BoettcherOptions& opts = {});

// phi_v(-2v). Throws NotTypeA unless classify reports A.
cplx phi0(const Parameter& v, const ClassifyOptions& copts = {}, const BoettcherOptions& opts = {});

// phi_v(f^m(-2v)) for type C parameters with entry time m. Throws
// WrongEntryTime when m disagrees with the classified entry time and
// NotTypeC when v is not type C.
cplx phiU(const Parameter& v, int m, const ClassifyOptions& copts = {},
          const BoettcherOptions& opts = {});

// The two formulas without the classification gate, used inside
// continuation where the parameter is already known to be in the component.
cplx phi0_unchecked(const Parameter& v, const BoettcherOptions& opts = {});
cplx phiU_unchecked(const Parameter& v, int m, const BoettcherOptions& opts = {});

struct InternalRayOptions {
  double r0 = 0.01;
  double newton_tol = 1e-9;
  int newton_max_steps = 40;
  int max_halvings = 12;
  BoettcherOptions boettcher;
};

// Preimage under phi_v of the radius at angle theta (in turns), sampled at
// `steps` radii on a geometric grid from r0 to r_max. Samples are stored
// from r_max down to r0 (t = r). Intended for v outside the closure of the
// type-A component, where phi_v maps B_v conformally onto the disk. Throws
// ContinuationStall with the last good radius in the message.
RayTrace internal_ray(const Parameter& v, double theta, double r_max, int steps,
                      const InternalRayOptions& opts = {});

} // namespace cosdyn
