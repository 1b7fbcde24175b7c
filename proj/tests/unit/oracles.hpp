#pragma once

// Small stand-alone reference computations used as test oracles. Nothing
// here calls into the library.

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// cos z - 1 = -2 sin^2(z/2), without the cancellation near 0.
inline cplx f(cplx v, cplx z) {
  const cplx s = std::sin(0.5 * z);
  return -2.0 * v * s * s;
}
inline cplx fp(cplx v, cplx z) { return -v * std::sin(z); }

inline cplx iterate(cplx v, cplx z, int n) {
  for (int i = 0; i < n; ++i)
    z = f(v, z);
  return z;
}

// Newton on f(z) = w from z.
inline std::optional<cplx> solve_preimage(cplx v, cplx w, cplx z, int steps = 100) {
  for (int i = 0; i < steps; ++i) {
    const cplx d = fp(v, z);
    if (std::abs(d) < 1e-300)
      return std::nullopt;
    const cplx dz = (f(v, z) - w) / d;
    z -= dz;
    if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z)))
      return z;
  }
  return std::nullopt;
}

// Root of tan(x/2) = x on (-pi, -pi/2) by plain bisection.
inline double tan_root() {
  double lo = -M_PI + 1e-9, hi = -M_PI / 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::tan(mid / 2) - mid < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double max_pairwise_distance(const std::vector<cplx>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

inline double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Proper crossing of segments ab and cd.
inline bool crosses(cplx a, cplx b, cplx c, cplx d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

// Brute-force check that a closed polygon has no two non-adjacent crossing
// edges.
inline bool simple_polygon(const std::vector<cplx>& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1)
        continue;
      if (crosses(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n]))
        return false;
    }
  return true;
}

} // namespace oracle
