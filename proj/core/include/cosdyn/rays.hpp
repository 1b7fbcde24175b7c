#pragma once

// Dynamic and parameter rays of f_v.
//
// f_v maps each half strip P_{j,k} conformally onto C minus the slit
// Gamma = [-2v, 0] u [0, +inf). P_{0,k} is the upper half strip bounded by
// the two preimage curves of [0, +inf) through 2k pi and 2(k+1) pi, P_{1,k}
// its mirror image under z -> -z (shifted). The ray with address s is
//
//   g_s(t) = lim_n L_{s_0} o ... o L_{s_n}(-F^n(t)),   F(t) = e^t - 1.

#include "cosdyn/address.hpp"
#include "cosdyn/family.hpp"
#include "cosdyn/geometry.hpp"
#include "cosdyn/ray_trace.hpp"

#include <optional>

namespace cosdyn {

double potential_F(double t);
// n-fold iterate; +inf once it leaves the double range.
double F_iter(int n, double t);
// Smallest n with F^n(t) = +inf in double precision (t > 0).
int overflow_index(double t);

double slit_margin(const Parameter& v);
double distance_to_slit(const Parameter& v, cplx w);

// Preimage of w in P_{j,k}. Throws OnSlit when w is within the slit margin
// and BranchFailure for v on the negative real axis, where the slit
// [-2v, 0] overlaps [0, +inf) and the strips are not labeled.
cplx inverse_branch(const Parameter& v, int j, int k, cplx w);
// Same, with w given through log w (for |w| beyond the double range).
cplx inverse_branch_log(const Parameter& v, int j, int k, cplx log_w);
// Whether z lies in the closure of the strip band of index k on its side of
// the real axis (Im z > 0 for j = 0, Im z < 0 for j = 1).
bool in_half_strip(const Parameter& v, int j, int k, cplx z);

struct RayOptions {
  double ray_tol = 1e-7;
  int start_depth = 8;
  int max_depth = 4096;
  double landing_tol = 1e-8;
  int landing_tail = 4;
  int max_halvings = 12;
  // Parameter rays.
  double newton_tol = 1e-10;
  int newton_max_steps = 50;
};

struct RayPoint {
  cplx z;
  int depth = 0;      // composition depth actually used
  double cauchy = 0.0; // |g_depth - g_(depth-1)|
};

// L_{s_0} o ... o L_{s_N}(-F^N(t)). Past the overflow index o of t the
// depth is capped at o + 1 (deeper terms agree in double precision).
// Throws SlitCollision when an intermediate point hits the slit.
RayPoint ray_point_at_depth(const Parameter& v, const ExternalAddress& a, double t, int N);

// Starts at depth N (or opts.start_depth when N <= 0) and doubles the depth
// until the Cauchy gap is at most ray_tol. Throws NoConvergence at the cap.
RayPoint dynamic_ray_point(const Parameter& v, const ExternalAddress& a, double t, int N = 0,
                           const RayOptions& opts = {});

// Relative defect |f(g_s(t)) - g_{shift s}(F t)| / max(1, |g_{shift s}(F t)|)
// with both sides at matching depths.
double shift_residual(const Parameter& v, const ExternalAddress& a, double t, const RayPoint& p);

// Samples t geometrically from t_hi down to t_lo. A point-level failure
// after the first sample ends the trace (failed_below holds the last good
// t); a failure at t_hi is thrown.
RayTrace trace_dynamic_ray(const Parameter& v, const ExternalAddress& a, double t_hi, double t_lo,
                           int steps, const RayOptions& opts = {});

// g^v_s(t) + 2v at full depth.
cplx parameter_ray_defect(const ExternalAddress& a, double t, const Parameter& v);

// Newton in v with central differences. Throws NoConvergence, or Collision
// when an iterate leaves the region where the ray point is defined.
Parameter parameter_ray_point(const ExternalAddress& a, double t, const Parameter& v_seed,
                              const RayOptions& opts = {});

// Grid search over box for the smallest |g^v_s(t) + 2v|, refined by Newton
// from the best few cells. Nothing when no cell converges.
std::optional<Parameter> seed_parameter_ray(const ExternalAddress& a, double t, const Rect& box,
                                            int grid = 48, const RayOptions& opts = {});

RayTrace trace_parameter_ray(const ExternalAddress& a, double t_hi, double t_lo, int steps,
                             const Parameter& v_seed, const RayOptions& opts = {});

} // namespace cosdyn
