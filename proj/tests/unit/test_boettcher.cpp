#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosdyn/boettcher.hpp"
#include "cosdyn/error.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace cosdyn;

namespace {

// 2^-n log|a f^n(z)| once the orbit is deep inside the disk around 0.
double naive_green(cplx v, cplx z) {
  const cplx a = -0.5 * v;
  double scale = 1.0;
  for (int n = 0; n < 200; ++n) {
    if (std::abs(z) < 1e-7)
      return scale * std::log(std::abs(a * z));
    z = oracle::f(v, z);
    scale *= 0.5;
  }
  return NAN;
}

} // namespace

TEST_CASE("green matches the naive limit") {
  for (const cplx v : {cplx(0.3, 0.0), cplx(1.0, 1.0), cplx(-4.0, 2.0)}) {
    const cplx a = -0.5 * v;
    for (const cplx w : {cplx(0.3, 0.1), cplx(-0.5, 0.4), cplx(0.05, -0.7)}) {
      const cplx z = w / a;
      const double g = naive_green(v, z);
      if (std::isnan(g))
        CHECK_THROWS_AS(green(Parameter(v), z), Error);
      else
        CHECK(std::abs(green(Parameter(v), z) - g) < 1e-9);
    }
  }
}

TEST_CASE("boettcher coordinate is tangent to a z at 0") {
  const cplx v(2.0, -1.0);
  const cplx z(1e-4, 2e-5);
  const cplx p = boettcher_coord(Parameter(v), z);
  CHECK(std::abs(p / (-0.5 * v * z) - 1.0) < 1e-6);
}

TEST_CASE("functional equation and Green doubling on random basin points") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.85, 0.85);
  for (const cplx vv : {cplx(0.2, 0.0), cplx(3.0, 3.0)}) {
    const Parameter v(vv);
    int done = 0;
    for (int i = 0; i < 2000 && done < 30; ++i) {
      const cplx w(u(rng), u(rng));
      if (std::abs(w) > 0.85)
        continue;
      const cplx z = w / (-0.5 * vv);
      try {
        const cplx p = boettcher_coord(v, z);
        CHECK(std::abs(boettcher_coord(v, oracle::f(vv, z)) - p * p) < 1e-8);
        CHECK(std::abs(green(v, oracle::f(vv, z)) - 2.0 * green(v, z)) < 1e-9);
        CHECK(std::abs(std::log(std::abs(p)) - green(v, z)) < 1e-9);
        ++done;
      } catch (const Error&) {
      }
    }
    CHECK(done == 30);
  }
}

TEST_CASE("jet derivative agrees with a finite difference") {
  const Parameter v(cplx(1.0, 0.5));
  const cplx z(0.3, -0.2);
  const double h = 1e-6;
  const BoettcherJet j = boettcher_jet(v, z);
  const cplx fd = (boettcher_coord(v, z + h) - boettcher_coord(v, z - h)) / (2 * h);
  CHECK(std::abs(j.value - boettcher_coord(v, z)) < 1e-14);
  CHECK(std::abs(j.derivative - fd) < 1e-7);
}

TEST_CASE("points outside the basin are rejected") {
  const Parameter v(cplx(0.0, 1.2));
  CHECK_THROWS_AS(green(v, v.critical_value()), Error);
}

TEST_CASE("phi0 behaves like v squared for small v") {
  for (int i = 0; i < 4; ++i) {
    const cplx v = std::polar(0.01, 0.3 + i * 1.4);
    const cplx p = phi0(Parameter(v));
    CHECK(std::abs(p / (v * v) - 1.0) <= 10.0 * std::norm(v));
    CHECK(std::abs(std::abs(p) - std::abs(phi0(Parameter(-v)))) < 1e-9);
  }
}

TEST_CASE("phi0 refuses non-A parameters") {
  try {
    phi0(Parameter(-M_PI));
    FAIL("expected NotTypeA");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTypeA);
  }
}

TEST_CASE("phiU vanishes at a type C center and checks the entry time") {
  CHECK(std::abs(phiU(Parameter(-M_PI), 1)) < 1e-12);
  try {
    phiU(Parameter(-M_PI), 2);
    FAIL("expected WrongEntryTime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongEntryTime);
  }
}

TEST_CASE("internal ray samples map onto the radius") {
  const Parameter v(10.0);
  const double theta = 0.1;
  const RayTrace tr = internal_ray(v, theta, 0.9, 12);
  REQUIRE(tr.samples.size() == 12);
  for (const RaySample& s : tr.samples) {
    const cplx target = std::polar(s.t, 2 * M_PI * theta);
    CHECK(std::abs(boettcher_coord(v, s.z) - target) < 1e-8);
  }
  CHECK(tr.samples.front().t > tr.samples.back().t);
}
