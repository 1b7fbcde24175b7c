#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosdyn/components.hpp"
#include "cosdyn/error.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace cosdyn;

TEST_CASE("type D center of the real period-one component is pi / 2") {
  // f_v(-pi) = -2v = -pi exactly when v = pi / 2.
  const Parameter c = find_center_typeD(Parameter(1.7), 1, -1);
  CHECK(std::abs(c.value() - M_PI / 2) < 1e-12);
  CHECK(std::abs(multiplier_map(c, 1)) < 1e-8);
}

TEST_CASE("type C center solves f^(m-1)(-2v) = 2 k pi") {
  const Parameter c = find_center_typeC(Parameter(cplx(-3.1, 0.05)), 1, 1);
  CHECK(std::abs(c.value() + M_PI) < 1e-12);
  CHECK(std::abs(oracle::iterate(c.value(), -2.0 * c.value(), 1)) < 1e-10);
}

TEST_CASE("multiplier map equals the cycle derivative") {
  const cplx v(M_PI / 2 + 0.1, 0.05);
  const cplx m = multiplier_map(Parameter(v), 1);
  // the attracting fixed point near -pi, found by plain Newton
  cplx z = -M_PI;
  for (int i = 0; i < 60; ++i)
    z -= (oracle::f(v, z) - z) / (oracle::fp(v, z) - 1.0);
  CHECK(std::abs(m - oracle::fp(v, z)) < 1e-9);
  CHECK(std::abs(m) < 1.0);
}

TEST_CASE("multiplier map refuses non-D parameters") {
  try {
    multiplier_map(Parameter(0.1), 1);
    FAIL("expected NotTypeD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTypeD);
  }
}

TEST_CASE("type D boundary: unit multipliers, closed and simple") {
  ComponentRecord rec{ParamKind::D, 0, -1, 1, cplx(M_PI / 2, 0.0), {}};
  const BoundaryTrace tr = trace_boundary(rec, 64);
  REQUIRE(tr.vertices.size() == 64);
  REQUIRE(tr.cycle_points.size() == 64);
  for (std::size_t i = 0; i < tr.vertices.size(); ++i) {
    const cplx v = tr.vertices[i], z = tr.cycle_points[i];
    CHECK(std::abs(oracle::f(v, z) - z) < 1e-8);
    CHECK(std::abs(std::abs(oracle::fp(v, z)) - 1.0) < 1e-8);
  }
  CHECK(tr.closure_gap <= 2.0 * tr.max_step);
  CHECK(oracle::simple_polygon(tr.vertices));
  // the parabolic landmark is where the multiplier is +1 on the real axis
  bool near_v1 = false;
  for (const cplx v : tr.vertices)
    near_v1 = near_v1 || std::abs(v - 1.3800501396893008) < 0.05;
  CHECK(near_v1);
}

TEST_CASE("type A level curve surrounds 0 and is symmetric") {
  ComponentRecord rec{ParamKind::A, 0, 0, 0, std::nullopt, {}};
  const BoundaryTrace tr = trace_boundary(rec, 48);
  REQUIRE(tr.vertices.size() == 48);
  CHECK(oracle::simple_polygon(tr.vertices));
  // winding number of the polygon around 0
  double turn = 0.0;
  for (std::size_t i = 0; i < tr.vertices.size(); ++i)
    turn += std::arg(tr.vertices[(i + 1) % tr.vertices.size()] / tr.vertices[i]);
  CHECK(std::abs(std::abs(turn) - 2 * M_PI) < 1e-6);
  for (const cplx v : tr.vertices)
    CHECK(std::abs(v) > 0.2);
}

TEST_CASE("boundary rejects too few vertices") {
  ComponentRecord rec{ParamKind::D, 0, -1, 1, cplx(M_PI / 2, 0.0), {}};
  CHECK_THROWS_AS(trace_boundary(rec, 2), Error);
}
