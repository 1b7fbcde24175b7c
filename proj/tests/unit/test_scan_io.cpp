#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosdyn/csv.hpp"
#include "cosdyn/error.hpp"
#include "cosdyn/image.hpp"
#include "cosdyn/scan.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

using namespace cosdyn;

namespace {

ScanConfig small(int w, int h, Rect box) {
  ScanConfig cfg;
  cfg.bbox = box;
  cfg.width = w;
  cfg.height = h;
  cfg.tile = 8;
  return cfg;
}

FateGrid two_by_one() {
  FateGrid g;
  g.bbox = Rect{0.0, 0.0, 2.0, 1.0};
  g.width = 2;
  g.height = 1;
  ParamClass a;
  a.kind = ParamKind::A;
  ParamClass e;
  e.kind = ParamKind::Escaping;
  e.certificate.steps_used = 1;
  g.cells = {a, e};
  return g;
}

} // namespace

TEST_CASE("pixel centers") {
  const ScanConfig cfg = small(4, 2, Rect{-2.0, -1.0, 2.0, 1.0});
  CHECK(cfg.pixel_center(0, 0) == cplx(-1.5, 0.5));
  CHECK(cfg.pixel_center(3, 1) == cplx(1.5, -0.5));
}

TEST_CASE("scan config validation") {
  ScanConfig cfg = small(4, 4, Rect{1.0, 0.0, 1.0, 1.0});
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small(0, 4, Rect::centered(1.0));
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small(4, 4, Rect::centered(1.0));
  cfg.tile = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("parameter scan is independent of the thread count") {
  ScanConfig cfg = small(24, 20, Rect::centered(4.0));
  cfg.threads = 1;
  const FateGrid a = scan_parameter_plane(cfg);
  cfg.threads = 3;
  const FateGrid b = scan_parameter_plane(cfg);
  std::ostringstream sa, sb;
  write_param_csv(sa, a);
  write_param_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(ppm_bytes(a, cfg.palette) == ppm_bytes(b, cfg.palette));
  CHECK(a.cells.size() == 24u * 20u);
}

TEST_CASE("small-disk pixels are type A") {
  const FateGrid g = scan_parameter_plane(small(10, 10, Rect::centered(0.19)));
  for (const ParamClass& c : g.cells)
    CHECK(c.kind == ParamKind::A);
}

TEST_CASE("dynamical plane fates are even") {
  const Parameter v(cplx(1.0, 0.4));
  const DynGrid g = scan_dynamical_plane(v, small(30, 20, Rect{-3.0, -2.0, 3.0, 2.0}));
  int mismatch = 0;
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c)
      mismatch += g.at(c, r).kind != g.at(g.width - 1 - c, g.height - 1 - r).kind;
  CHECK(mismatch == 0);
}

TEST_CASE("dynamical plane fates are 2 pi periodic") {
  // 40 columns over 4 pi: column c and c + 20 are 2 pi apart.
  const Parameter v(cplx(0.6, 0.3));
  const DynGrid g = scan_dynamical_plane(v, small(40, 10, Rect{0.0, -1.0, 4 * M_PI, 1.0}));
  int mismatch = 0;
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < 20; ++c)
      mismatch += g.at(c, r).kind != g.at(c + 20, r).kind;
  CHECK(mismatch <= 4);
}

TEST_CASE("the component of 0 is small for |v| = 10") {
  const Parameter v(10.0);
  // An even pixel count keeps every row off the real axis, where real
  // orbits fall into many different preimage components of the basin.
  const int n = 80;
  const DynGrid g = scan_dynamical_plane(v, small(n, n, Rect::centered(1.0)));
  // 4-connected pixels converging to 0, grown from the pixel at the upper
  // right of 0; other components (preimages near +-1.06i) are not counted
  std::vector<char> seen(g.cells.size(), 0);
  std::vector<std::pair<int, int>> stack{{n / 2, n / 2 - 1}};
  REQUIRE(g.at(n / 2, n / 2 - 1).kind == Fate::ConvergedToZero);
  seen[static_cast<std::size_t>((n / 2 - 1) * n + n / 2)] = 1;
  std::vector<cplx> pts;
  while (!stack.empty()) {
    const auto [c, r] = stack.back();
    stack.pop_back();
    pts.emplace_back(-1.0 + (c + 0.5) * 2.0 / n, 1.0 - (r + 0.5) * 2.0 / n);
    for (const auto [dc, dr] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const int cc = c + dc, rr = r + dr;
      if (cc < 0 || rr < 0 || cc >= n || rr >= n)
        continue;
      const auto i = static_cast<std::size_t>(rr * n + cc);
      if (!seen[i] && g.cells[i].kind == Fate::ConvergedToZero) {
        seen[i] = 1;
        stack.emplace_back(cc, rr);
      }
    }
  }
  double diam = 0.0;
  for (const cplx a : pts)
    for (const cplx b : pts)
      diam = std::max(diam, std::abs(a - b));
  CHECK(pts.size() > 4);
  CHECK(diam <= 8.0 * std::sqrt(2.0) / 10.0 + 2.0 * 2.0 / n);
}

TEST_CASE("PPM bytes of a 2x1 grid") {
  const std::string expected = std::string("P6\n2 1\n255\n") + std::string("\x00\x00\x00\xff\xff\xff", 6);
  const std::string got = ppm_bytes(two_by_one(), Palette{});
  CHECK(got.size() == 17);
  CHECK(got == expected);
}

TEST_CASE("palette changes only the payload") {
  Palette p;
  p.type_a = {10, 20, 30};
  const std::string a = ppm_bytes(two_by_one(), Palette{});
  const std::string b = ppm_bytes(two_by_one(), p);
  CHECK(a.substr(0, 11) == b.substr(0, 11));
  CHECK(b.substr(11, 3) == std::string("\x0a\x14\x1e", 3));
  CHECK(a.substr(14) == b.substr(14));
}

TEST_CASE("escape colors run from fast to slow") {
  Palette p;
  ParamClass e;
  e.kind = ParamKind::Escaping;
  e.certificate.steps_used = 1;
  CHECK(color_of(e, p) == p.escape_fast);
  e.certificate.steps_used = 64;
  CHECK(color_of(e, p) == p.escape_slow);
  e.certificate.steps_used = 100000;
  CHECK(color_of(e, p) == p.escape_slow);
  ParamClass u;
  CHECK(color_of(u, p) == Rgb{255, 0, 0});
}

TEST_CASE("render_ppm writes the same bytes and reports I/O errors") {
  const std::string path = "cosdyn_test_2x1.ppm";
  render_ppm(two_by_one(), Palette{}, path);
  std::ifstream in(path, std::ios::binary);
  const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(file == ppm_bytes(two_by_one(), Palette{}));
  std::remove(path.c_str());
  try {
    render_ppm(two_by_one(), Palette{}, "/nonexistent_dir/x.ppm");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("doubles round-trip through the text format") {
  for (const double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, M_PI, -0.0})
    CHECK(parse_double(format_double(x)) == x);
  CHECK_THROWS_AS(parse_double("1.5x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
}

TEST_CASE("parameter CSV round trip") {
  const FateGrid g = scan_parameter_plane(small(6, 5, Rect{-4.0, -3.0, 4.0, 3.0}));
  std::stringstream s;
  write_param_csv(s, g);
  const auto rows = read_param_csv(s);
  REQUIRE(rows.size() == 30);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 6; ++c)
      CHECK(rows[static_cast<std::size_t>(r * 6 + c)] == param_row(g, c, r));
  std::stringstream again;
  write_param_csv(again, g);
  std::stringstream copy(again.str());
  CHECK(read_param_csv(copy) == rows);
}

TEST_CASE("dynamical CSV round trip") {
  const DynGrid g = scan_dynamical_plane(Parameter(cplx(0.5, 0.5)), small(5, 4, Rect::centered(2.0)));
  std::stringstream s;
  write_dyn_csv(s, g);
  const auto rows = read_dyn_csv(s);
  REQUIRE(rows.size() == 20);
  CHECK(rows[0].re == g.bbox.x_min + 0.5 * g.bbox.width() / 5);
  CHECK(rows[7].fate == g.at(2, 1).kind);
}

TEST_CASE("ray and polyline CSV round trip") {
  RayTrace tr;
  tr.samples = {{5.0, cplx(1.0, 2.0), 1e-12}, {2.5, cplx(0.1, 0.2), 3e-15}};
  tr.landed = true;
  std::stringstream s;
  write_ray_csv(s, tr);
  const auto rows = read_ray_csv(s);
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].landed.has_value());
  CHECK(rows[1].landed == true);
  CHECK(rows[1].im == 0.2);

  std::stringstream p;
  write_polyline_csv(p, polyline_rows(tr));
  const auto back = read_polyline_csv(p);
  REQUIRE(back.size() == 2);
  CHECK(back[1].index == 1);
  CHECK(back[0].t_or_r == 5.0);
  CHECK(back[0].residual == 1e-12);
}

TEST_CASE("readers reject wrong headers and short rows") {
  std::stringstream bad("x,y\n1,2\n");
  CHECK_THROWS_AS(read_param_csv(bad), Error);
  std::stringstream short_row("t,re,im,residual,landed\n1,2,3\n");
  CHECK_THROWS_AS(read_ray_csv(short_row), Error);
}
