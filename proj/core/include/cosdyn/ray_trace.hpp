#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace cosdyn {

struct RaySample {
  double t;                  // potential (dynamic/parameter rays) or radius (internal rays)
  std::complex<double> z;
  double residual;
};

struct RayTrace {
  std::vector<RaySample> samples;
  std::optional<std::complex<double>> landing_candidate;
  bool landed = false;
  // Set when the candidate passed the periodic / preperiodic cross-check.
  bool landing_verified = false;
  int truncation_depth = 0;
  // Bracket for the end of the ray's domain: the smallest potential reached
  // and the potential where tracing stopped making progress (failure or
  // landing). Never an exact value.
  double t_end_lo = 0.0;
  double t_end_hi = 0.0;
  // Potential of the last sample before a point-level failure, if any.
  std::optional<double> failed_below;
};

} // namespace cosdyn
