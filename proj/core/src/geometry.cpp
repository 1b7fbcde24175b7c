#include "cosdyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cosdyn {

namespace {

using cplx = std::complex<double>;

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

bool on_segment(cplx p, cplx q, cplx r) {
  return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
         std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
}

} // namespace

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0)
    return true;
  if (d1 == 0 && on_segment(c, a, d)) return true;
  if (d2 == 0 && on_segment(c, b, d)) return true;
  if (d3 == 0 && on_segment(a, c, b)) return true;
  if (d4 == 0 && on_segment(a, d, b)) return true;
  return false;
}

std::optional<std::pair<std::size_t, std::size_t>>
find_self_intersection(std::span<const cplx> loop) {
  const std::size_t n = loop.size();
  if (n < 4)
    return std::nullopt;
  // Sweep over edges sorted by their left x extent; only edges whose x
  // ranges overlap are compared.
  struct Edge {
    double lo, hi;
    std::size_t i;
  };
  std::vector<Edge> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = loop[i];
    const cplx b = loop[(i + 1) % n];
    edges[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()), i};
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.lo < y.lo; });
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n && edges[t].lo <= edges[s].hi; ++t) {
      std::size_t i = edges[s].i;
      std::size_t j = edges[t].i;
      if (i > j)
        std::swap(i, j);
      if (j == i + 1 || (i == 0 && j == n - 1))
        continue;
      if (segments_intersect(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n]))
        return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

double point_set_diameter(std::span<const cplx> pts) {
  if (pts.size() < 2)
    return 0.0;
  std::vector<cplx> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<cplx> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, std::abs(hull[i] - hull[j]));
  return best;
}

} // namespace cosdyn
