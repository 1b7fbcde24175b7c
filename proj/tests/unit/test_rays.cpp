#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosdyn/address.hpp"
#include "cosdyn/error.hpp"
#include "cosdyn/rays.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace cosdyn;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Io;
}

} // namespace

TEST_CASE("address parsing and printing") {
  const ExternalAddress a = ExternalAddress::parse("(0,1)|(0,0);(1,-2)");
  REQUIRE(a.preperiod().size() == 1);
  REQUIRE(a.period().size() == 2);
  CHECK(a.preperiod()[0] == Symbol{0, 1});
  CHECK(a.period()[1] == Symbol{1, -2});
  CHECK(a.to_string() == "(0,1)|(0,0);(1,-2)");
  CHECK(ExternalAddress::parse(a.to_string()) == a);
  CHECK(ExternalAddress::parse(" 0,1 | 0,0 ; 1,-2 ") == a);
  CHECK(ExternalAddress::parse("(1,3)").periodic());
}

TEST_CASE("addresses are stored in canonical form") {
  CHECK(ExternalAddress::parse("(0,0);(0,0)") == ExternalAddress::parse("(0,0)"));
  CHECK(ExternalAddress::parse("(0,0)|(0,0)") == ExternalAddress::parse("(0,0)"));
  CHECK(ExternalAddress::parse("(1,0)|(0,1);(1,0)") == ExternalAddress::parse("(1,0);(0,1)"));
  CHECK_FALSE(ExternalAddress::parse("(0,1);(1,0)") == ExternalAddress::parse("(1,0);(0,1)"));
}

TEST_CASE("address indexing and shift") {
  const ExternalAddress a = ExternalAddress::parse("(0,2)|(1,0);(0,-1)");
  CHECK(a[0] == Symbol{0, 2});
  CHECK(a[1] == Symbol{1, 0});
  CHECK(a[2] == Symbol{0, -1});
  CHECK(a[3] == Symbol{1, 0});
  const ExternalAddress s = a.shift();
  CHECK(s == ExternalAddress::parse("(1,0);(0,-1)"));
  CHECK(s.shift() == ExternalAddress::parse("(0,-1);(1,0)"));
  CHECK(s.shift().shift() == s);
  for (std::size_t n = 0; n < 8; ++n)
    CHECK(a.shift()[n] == a[n + 1]);
}

TEST_CASE("malformed addresses are rejected") {
  for (const char* bad : {"", "(0,1)|", "(2,0)", "(0,x)", "(0,1)|(0,0)|(1,1)", "(0 1)"})
    CHECK(code_of([&] { ExternalAddress::parse(bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("potential function and its iterates") {
  CHECK(potential_F(1.0) == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(F_iter(2, 1.0) == doctest::Approx(std::exp(std::exp(1.0) - 1.0) - 1.0));
  CHECK(std::isinf(F_iter(overflow_index(2.0), 2.0)));
  CHECK(std::isfinite(F_iter(overflow_index(2.0) - 1, 2.0)));
}

TEST_CASE("inverse branch of cos z - 1 = i at v = 1") {
  // cos z = 1 + i in the upper strip over [0, 2 pi]: Newton from a rough
  // guess, cross-checked against the principal arccos.
  const auto z_newton = oracle::solve_preimage(1.0, cplx(0.0, 1.0), cplx(5.4, 1.0));
  REQUIRE(z_newton.has_value());
  const cplx z_acos = 2 * M_PI - std::acos(cplx(1.0, 1.0));
  CHECK(std::abs(*z_newton - z_acos) < 1e-12);
  const cplx z = inverse_branch(Parameter(1.0), 0, 0, cplx(0.0, 1.0));
  CHECK(std::abs(z - *z_newton) < 1e-12);
  CHECK(z.imag() > 0);
}

TEST_CASE("inverse branches are right inverses inside their strips") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (const cplx vv : {cplx(1.0, 0.5), cplx(0.3, -2.0), cplx(-2.0, 1.0)}) {
    const Parameter v(vv);
    int n = 0;
    for (int i = 0; i < 4000 && n < 200; ++i) {
      const cplx w(u(rng), u(rng));
      if (distance_to_slit(v, w) < 10 * slit_margin(v))
        continue;
      const int j = i % 2, k = (i / 2) % 5 - 2;
      const cplx z = inverse_branch(v, j, k, w);
      CHECK(std::abs(oracle::f(vv, z) - w) < 1e-10 * std::max(1.0, std::abs(w)));
      CHECK(in_half_strip(v, j, k, z));
      ++n;
    }
    CHECK(n == 200);
  }
}

TEST_CASE("the log form agrees with the direct branch for huge arguments") {
  const Parameter v(cplx(0.7, 0.4));
  for (const cplx w : {std::polar(1e17, 0.3), std::polar(1e18, -2.0), std::polar(1e20, 2.9)}) {
    for (int j = 0; j < 2; ++j) {
      const cplx z = inverse_branch_log(v, j, 1, std::log(w));
      CHECK(in_half_strip(v, j, 1, z));
      // log|f(z)| and arg f(z) rather than f(z) itself, which is huge
      const cplx lf = std::log(-2.0 * v.value()) + 2.0 * std::log(std::sin(0.5 * z));
      CHECK(std::abs(std::exp(lf - std::log(w)) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("strips tile by 2 pi translation") {
  const Parameter v(cplx(0.8, 0.6));
  const cplx w(2.0, 5.0);
  CHECK(std::abs(inverse_branch(v, 0, 3, w) - inverse_branch(v, 0, 0, w) - 6 * M_PI) < 1e-12);
  CHECK(std::abs(inverse_branch(v, 1, -1, w) - inverse_branch(v, 1, 0, w) + 2 * M_PI) < 1e-12);
}

TEST_CASE("inverse branch errors") {
  const Parameter v(1.0);
  CHECK(code_of([&] { inverse_branch(v, 0, 0, cplx(3.0, 0.0)); }) == ErrorCode::OnSlit);
  CHECK(code_of([&] { inverse_branch(v, 0, 0, cplx(-1.0, 0.0)); }) == ErrorCode::OnSlit);
  CHECK(code_of([&] { inverse_branch(Parameter(-1.0), 0, 0, cplx(1.0, 1.0)); }) ==
        ErrorCode::BranchFailure);
}

TEST_CASE("dynamic rays satisfy the shift relation") {
  const cplx vv(1.0, 0.5);
  const Parameter v(vv);
  for (const char* text : {"(0,0)", "(1,-1)", "(0,1);(1,0)", "(0,2)|(1,0)"}) {
    const ExternalAddress a = ExternalAddress::parse(text);
    for (const double t : {2.0, 3.0, 4.5}) {
      const RayPoint p = dynamic_ray_point(v, a, t);
      const RayPoint q = dynamic_ray_point(v, a.shift(), std::exp(t) - 1.0);
      CHECK(std::abs(oracle::f(vv, p.z) - q.z) <= 1e-7 * std::max(1.0, std::abs(q.z)));
      CHECK(std::abs(ray_point_at_depth(v, a, t, 2 * p.depth).z - p.z) <= 1e-7);
    }
  }
}

TEST_CASE("a preperiodic ray is a 2 pi translate of its periodic image") {
  // f(z + 2 pi) = f(z), so prefixing (0,1) to (0,0)^inf moves the ray by 2 pi.
  const Parameter v(cplx(1.0, 0.5));
  for (const double t : {1.5, 3.0}) {
    const cplx base = dynamic_ray_point(v, ExternalAddress::parse("(0,0)"), t).z;
    const cplx moved = dynamic_ray_point(v, ExternalAddress::parse("(0,1)|(0,0)"), t).z;
    CHECK(std::abs(moved - base - 2 * M_PI) < 1e-9);
  }
}

TEST_CASE("rays go to infinity to the right in their strip") {
  const Parameter v(cplx(0.5, 0.5));
  const ExternalAddress a = ExternalAddress::parse("(0,0)");
  const cplx z = dynamic_ray_point(v, a, 4.0).z;
  CHECK(z.imag() > 0);
  CHECK(std::abs(z) > 4.0);
  CHECK(in_half_strip(v, 0, 0, z));
}

TEST_CASE("ray traces carry small residuals and sample downwards") {
  const Parameter v(cplx(1.0, 0.5));
  const RayTrace tr = trace_dynamic_ray(v, ExternalAddress::parse("(1,-1)"), 5.0, 2.0, 12);
  REQUIRE(tr.samples.size() == 12);
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    CHECK(tr.samples[i].residual <= 1e-7);
    if (i)
      CHECK(tr.samples[i].t < tr.samples[i - 1].t);
  }
}

TEST_CASE("a ray at v = i log(1 + sqrt 2) lands at the fixed point 2v") {
  const double y0 = std::log(1.0 + std::sqrt(2.0));
  const cplx vv(0.0, y0);
  // 2v is a repelling fixed point with -2v mapping onto it.
  CHECK(std::abs(oracle::f(vv, 2.0 * vv) - 2.0 * vv) < 1e-12);
  const RayTrace tr = trace_dynamic_ray(Parameter(vv), ExternalAddress::parse("(0,-1)"), 5.0, 1e-4, 64);
  REQUIRE(tr.landing_candidate.has_value());
  CHECK(tr.landed);
  CHECK(std::abs(*tr.landing_candidate - 2.0 * vv) < 1e-6);
}

TEST_CASE("parameter ray points put the critical value on the dynamic ray") {
  const ExternalAddress a = ExternalAddress::parse("(0,0)");
  const auto seed = seed_parameter_ray(a, 4.0, Rect::centered(8.0));
  REQUIRE(seed.has_value());
  const RayTrace tr = trace_parameter_ray(a, 4.0, 1.5, 8, *seed);
  REQUIRE(tr.samples.size() == 8);
  for (const RaySample& s : tr.samples) {
    const Parameter v(s.z);
    const cplx g = dynamic_ray_point(v, a, s.t).z;
    CHECK(std::abs(g + 2.0 * s.z) <= 1e-8 * std::max(1.0, std::abs(g)));
  }
}
