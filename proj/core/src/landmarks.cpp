#include "cosdyn/landmarks.hpp"

#include <cmath>

namespace cosdyn {

double imaginary_axis_threshold() { return std::log(1.0 + std::sqrt(2.0)); }

ParabolicLandmark real_axis_parabolic() {
  // tan(z/2) - z is increasing on (-pi, -pi/2), negative near -pi and
  // positive at -pi/2.
  auto g = [](double z) { return std::tan(0.5 * z) - z; };
  double lo = -pi + 1e-9, hi = -0.5 * pi;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi)
      break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double c = std::cos(0.5 * z);
    const double dz = g(z) / (0.5 / (c * c) - 1.0);
    if (!(std::abs(dz) < 1e-10))
      break;
    z -= dz;
  }
  return {z, -1.0 / std::sin(z)};
}

} // namespace cosdyn
