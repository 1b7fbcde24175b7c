#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosdyn/classify.hpp"
#include "cosdyn/error.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace cosdyn;

namespace {

ParamKind kind(cplx v) { return classify(Parameter(v)).kind; }

} // namespace

TEST_CASE("small parameters are type A") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> r(0.01, 0.199), a(0.0, 2 * M_PI);
  for (int i = 0; i < 10; ++i)
    CHECK(kind(std::polar(r(rng), a(rng))) == ParamKind::A);
}

TEST_CASE("imaginary axis splits at log(1 + sqrt 2)") {
  const double y0 = std::log(1.0 + std::sqrt(2.0));
  CHECK(kind(cplx(0.0, y0 - 0.05)) == ParamKind::A);
  CHECK(kind(cplx(0.0, y0 + 0.05)) == ParamKind::Escaping);
  CHECK(kind(cplx(0.0, -(y0 - 0.05))) == ParamKind::A);
}

TEST_CASE("sign conjugacy keeps the kind") {
  for (const cplx v : {cplx(0.5, 0.3), cplx(2.0, 0.0), cplx(-3.0, 1.0), cplx(0.2, 2.5), cplx(5.0, -4.0)})
    CHECK(kind(v) == kind(-v));
}

TEST_CASE("type D at the real period-one center") {
  const ParamClass c = classify(Parameter(M_PI / 2));
  CHECK(c.kind == ParamKind::D);
  CHECK(c.p == 1);
}

TEST_CASE("type C with entry time one at v = -pi") {
  // -2v = 2 pi is a critical point, so f(-2v) = 0 while -2v itself lies in
  // the translate B_v + 2 pi of the basin.
  CHECK(std::abs(oracle::f(-M_PI, 2 * M_PI)) < 1e-12);
  const ParamClass c = classify(Parameter(-M_PI));
  CHECK(c.kind == ParamKind::C);
  CHECK(c.m == 1);
  CHECK(c.k == 1);
  const ParamClass d = classify(Parameter(M_PI));
  CHECK(d.kind == ParamKind::C);
  CHECK(d.m == 1);
  CHECK(d.k == -1);
}

TEST_CASE("entry time and translate are locally constant") {
  const ParamClass c0 = classify(Parameter(-M_PI));
  for (const cplx dv : {cplx(0.01, 0.0), cplx(0.0, 0.01), cplx(-0.01, -0.01)}) {
    const ParamClass c = classify(Parameter(-M_PI + dv));
    CHECK(c.kind == ParamKind::C);
    CHECK(c.m == c0.m);
    CHECK(c.k == c0.k);
  }
}

TEST_CASE("m_of_v and k_of_v on a fill") {
  const Parameter v(-M_PI);
  const BasinApprox b = basin_flood_fill(v, default_basin_resolution(v), default_basin_box(v));
  CHECK_FALSE(b.overflowed());
  const int m = m_of_v(v, b);
  CHECK(m == 1);
  CHECK(k_of_v(v, m, b) == 1);
}

TEST_CASE("basin diameter for large v stays under 8 sqrt 2 / |v|") {
  for (const cplx vv : {cplx(10.0, 0.0), cplx(0.0, 50.0)}) {
    const Parameter v(vv);
    const double res = default_basin_resolution(v);
    const BasinApprox b = basin_flood_fill(v, res, default_basin_box(v));
    REQUIRE_FALSE(b.overflowed());
    const double d = oracle::max_pairwise_distance(b.marked_centers());
    CHECK(std::abs(d - b.diameter()) < 1e-12);
    CHECK(d <= 8.0 * std::sqrt(2.0) / std::abs(vv) + 2.0 * res);
  }
}

TEST_CASE("basin diameter changes little under resolution halving") {
  const Parameter v(10.0);
  const double res = default_basin_resolution(v);
  const Rect box = default_basin_box(v);
  const double d1 = basin_flood_fill(v, res, box).diameter();
  const double d2 = basin_flood_fill(v, res / 2, box).diameter();
  CHECK(std::abs(d1 - d2) <= 2.0 * res);
}

TEST_CASE("type A basins overflow the box") {
  const Parameter v(cplx(0.1, 0.1));
  const BasinApprox b = basin_flood_fill(v, default_basin_resolution(v), default_basin_box(v));
  CHECK(b.overflowed());
}

TEST_CASE("flood fill rejects bad boxes") {
  const Parameter v(1.0);
  CHECK_THROWS_AS(basin_flood_fill(v, 0.0, Rect::centered(1.0)), Error);
  CHECK_THROWS_AS(basin_flood_fill(v, 0.1, Rect{1.0, 1.0, 2.0, 2.0}), Error);
}

TEST_CASE("membership of 0 and of a far point") {
  const Parameter v(10.0);
  const BasinApprox b = basin_flood_fill(v, default_basin_resolution(v), default_basin_box(v));
  CHECK(basin_membership(v, b, cplx(0.0, 0.0), OrbitBudget{}) == Membership::Inside);
  CHECK(basin_membership(v, b, cplx(3.0, 3.0), OrbitBudget{}) == Membership::Outside);
}

TEST_CASE("certificates of type D verdicts") {
  const ParamClass c = classify(Parameter(M_PI / 2 + 0.05));
  REQUIRE(c.kind == ParamKind::D);
  CHECK(std::abs(c.certificate.multiplier) < 1.0);
  for (const cplx z : c.certificate.cycle)
    CHECK(std::abs(z) > OrbitBudget{}.delta_for(Parameter(M_PI / 2 + 0.05)));
}
