#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>

namespace cosdyn {

struct Rect {
  double x_min = -1.0;
  double y_min = -1.0;
  double x_max = 1.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(std::complex<double> z) const {
    return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
  }
  bool degenerate() const { return !(width() > 0.0) || !(height() > 0.0); }
  friend bool operator==(const Rect&, const Rect&) = default;

  static Rect centered(double half_width) { return {-half_width, -half_width, half_width, half_width}; }
};

bool segments_intersect(std::complex<double> a, std::complex<double> b, std::complex<double> c,
                        std::complex<double> d);

// First pair of non-adjacent crossing edges of a closed polyline, or nothing
// when the loop is simple. The closing edge last -> first is included.
std::optional<std::pair<std::size_t, std::size_t>>
find_self_intersection(std::span<const std::complex<double>> loop);

// Largest pairwise distance (convex hull + brute force over hull vertices).
double point_set_diameter(std::span<const std::complex<double>> pts);

} // namespace cosdyn
