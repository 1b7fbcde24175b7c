// cosdyn: command-line driver for the scanners, rays, components and the
// verification suite.
//
// A config file (--config PATH) holds key=value lines named after the long
// flags, e.g. "bbox=-2,-2,2,2" or "max-iter=500". Its values replace the
// defaults; flags given on the command line still win.

#include "cosdyn/address.hpp"
#include "cosdyn/components.hpp"
#include "cosdyn/csv.hpp"
#include "cosdyn/error.hpp"
#include "cosdyn/image.hpp"
#include "cosdyn/rays.hpp"
#include "cosdyn/scan.hpp"
#include "cosdyn/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace cosdyn;

namespace {

std::vector<double> split_numbers(const std::string& s, std::size_t want, const char* what) {
  std::vector<double> out;
  for (const std::string& f : split_csv_line(s))
    out.push_back(parse_double(f));
  if (out.size() != want)
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " expects " + std::to_string(want) + " comma-separated numbers");
  return out;
}

Rect parse_bbox(const std::string& s) {
  const auto x = split_numbers(s, 4, "--bbox");
  Rect r{x[0], x[1], x[2], x[3]};
  if (r.degenerate())
    throw Error(ErrorCode::InvalidArgument, "--bbox needs x0 < x1 and y0 < y1");
  return r;
}

cplx parse_complex(const std::string& s) {
  const auto x = split_numbers(s, 2, "--v");
  return {x[0], x[1]};
}

std::pair<int, int> parse_px(const std::string& s) {
  const auto x = split_numbers(s, 2, "--px");
  if (x[0] < 1 || x[1] < 1 || x[0] != std::floor(x[0]) || x[1] != std::floor(x[1]))
    throw Error(ErrorCode::InvalidArgument, "--px needs two positive integers");
  return {static_cast<int>(x[0]), static_cast<int>(x[1])};
}

Rgb parse_rgb(const std::string& s) {
  const auto x = split_numbers(s, 3, "color");
  Rgb c{};
  for (int i = 0; i < 3; ++i) {
    if (x[i] < 0 || x[i] > 255)
      throw Error(ErrorCode::InvalidArgument, "color channels are 0..255");
    c[i] = static_cast<std::uint8_t>(x[i]);
  }
  return c;
}

// key=value lines, '#' starts a comment. Keys may use '_' for '-'.
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::Io, "cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto h = line.find('#'); h != std::string::npos)
      line.erase(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos)
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(n) + ": expected key=value");
    std::string key = line.substr(b, eq - b);
    std::string val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    val.erase(val.find_last_not_of(" \t\r") + 1);
    for (char& c : key)
      if (c == '_')
        c = '-';
    out.push_back("--" + key + "=" + val);
  }
  return out;
}

// Moves "--config PATH" out of argv and splices the file's entries right
// after the subcommand name, ahead of the user's own flags.
std::vector<std::string> expand_config(int argc, char** argv, const std::vector<std::string>& subs) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (!path)
    return args;
  const auto extra = config_args(*path);
  std::size_t at = 0;
  for (; at < args.size(); ++at)
    if (std::find(subs.begin(), subs.end(), args[at]) != subs.end())
      break;
  if (at == args.size())
    throw Error(ErrorCode::InvalidArgument, "--config needs a subcommand");
  args.insert(args.begin() + static_cast<long>(at) + 1, extra.begin(), extra.end());
  return args;
}

struct Common {
  std::string bbox, px, v, out, csv, address;
  std::string color_a, color_c, color_d, color_undecided, color_fast, color_slow;
  int max_iter = 0;
  int threads = 0;
  double divisions = 256.0;
  int refinements = 6;
};

void add_palette(CLI::App* s, Common& c) {
  s->add_option("--color-a", c.color_a, "R,G,B for type A");
  s->add_option("--color-c", c.color_c, "R,G,B for type C");
  s->add_option("--color-d", c.color_d, "R,G,B for type D");
  s->add_option("--color-undecided", c.color_undecided, "R,G,B for undecided pixels");
  s->add_option("--color-fast", c.color_fast, "R,G,B for fast escape");
  s->add_option("--color-slow", c.color_slow, "R,G,B for slow escape");
}

Palette palette_of(const Common& c) {
  Palette p;
  if (!c.color_a.empty()) p.type_a = parse_rgb(c.color_a);
  if (!c.color_c.empty()) p.type_c = parse_rgb(c.color_c);
  if (!c.color_d.empty()) p.type_d = parse_rgb(c.color_d);
  if (!c.color_undecided.empty()) p.undecided = parse_rgb(c.color_undecided);
  if (!c.color_fast.empty()) p.escape_fast = parse_rgb(c.color_fast);
  if (!c.color_slow.empty()) p.escape_slow = parse_rgb(c.color_slow);
  return p;
}

ScanConfig scan_config(const Common& c) {
  ScanConfig cfg;
  cfg.bbox = parse_bbox(c.bbox);
  std::tie(cfg.width, cfg.height) = parse_px(c.px);
  cfg.threads = c.threads;
  cfg.palette = palette_of(c);
  if (c.max_iter > 0) {
    cfg.classify.budget.max_iter = c.max_iter;
    cfg.dyn_budget.max_iter = c.max_iter;
  }
  cfg.classify.divisions = c.divisions;
  cfg.classify.max_refinements = c.refinements;
  cfg.validate();
  return cfg;
}

void write_csv_to(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

int run_scan(const Common& c) {
  const ScanConfig cfg = scan_config(c);
  const auto t0 = std::chrono::steady_clock::now();
  const FateGrid g = scan_parameter_plane(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::map<ParamKind, long> counts;
  for (const ParamClass& p : g.cells)
    ++counts[p.kind];
  std::printf("scan %dx%d in %.2fs:", g.width, g.height, secs);
  for (const auto& [k, n] : counts)
    std::printf(" %s=%ld", to_string(k), n);
  std::printf("\n");
  if (!c.out.empty())
    render_ppm(g, cfg.palette, c.out);
  if (!c.csv.empty()) {
    std::ostringstream s;
    write_param_csv(s, g);
    write_csv_to(c.csv, s.str());
  }
  return 0;
}

int run_dyn(const Common& c) {
  const ScanConfig cfg = scan_config(c);
  const Parameter v(parse_complex(c.v));
  const DynGrid g = scan_dynamical_plane(v, cfg);
  std::map<Fate, long> counts;
  for (const PointFate& p : g.cells)
    ++counts[p.kind];
  std::printf("dyn %dx%d:", g.width, g.height);
  for (const auto& [k, n] : counts)
    std::printf(" %s=%ld", to_string(k), n);
  std::printf("\n");
  if (!c.out.empty())
    render_ppm(g, cfg.palette, c.out);
  if (!c.csv.empty()) {
    std::ostringstream s;
    write_dyn_csv(s, g);
    write_csv_to(c.csv, s.str());
  }
  return 0;
}

struct RayArgs {
  double t_hi = 5.0;
  double t_lo = 0.5;
  int steps = 64;
};

void print_trace_summary(const RayTrace& tr) {
  std::printf("samples %zu", tr.samples.size());
  if (!tr.samples.empty())
    std::printf(", t in [%.6g, %.6g]", tr.samples.back().t, tr.samples.front().t);
  if (tr.failed_below)
    std::printf(", stopped below t=%.6g", *tr.failed_below);
  std::printf("\n");
  if (tr.landing_candidate)
    std::printf("landing %s at %.15g%+.15gi%s\n", tr.landed ? "detected" : "candidate",
                tr.landing_candidate->real(), tr.landing_candidate->imag(),
                tr.landing_verified ? " (verified)" : "");
}

int run_ray(const Common& c, const RayArgs& r) {
  const Parameter v(parse_complex(c.v));
  const ExternalAddress a = ExternalAddress::parse(c.address);
  const RayTrace tr = trace_dynamic_ray(v, a, r.t_hi, r.t_lo, r.steps);
  std::printf("ray %s at v=%.15g%+.15gi: ", a.to_string().c_str(), v.value().real(), v.value().imag());
  print_trace_summary(tr);
  std::ostringstream s;
  write_ray_csv(s, tr);
  if (!c.csv.empty())
    write_csv_to(c.csv, s.str());
  return 0;
}

int run_pray(const Common& c, const RayArgs& r) {
  const ExternalAddress a = ExternalAddress::parse(c.address);
  Parameter seed(1.0);
  if (!c.v.empty()) {
    seed = Parameter(parse_complex(c.v));
  } else {
    const auto s = seed_parameter_ray(a, r.t_hi, parse_bbox(c.bbox));
    if (!s)
      throw Error(ErrorCode::NoConvergence, "no parameter-ray seed found in --bbox; pass --v");
    seed = *s;
  }
  const RayTrace tr = trace_parameter_ray(a, r.t_hi, r.t_lo, r.steps, seed);
  std::printf("parameter ray %s: ", a.to_string().c_str());
  print_trace_summary(tr);
  std::ostringstream s;
  write_ray_csv(s, tr);
  if (!c.csv.empty())
    write_csv_to(c.csv, s.str());
  return 0;
}

struct ComponentArgs {
  std::optional<int> m, k, p;
  int steps = 256;
};

// Index of the odd critical point (2k+1) pi nearest to the attracting cycle.
int nearest_odd_critical(const std::vector<cplx>& cycle) {
  int best = 0;
  double dist = INFINITY;
  for (const cplx& z : cycle) {
    const int k = static_cast<int>(std::lround((z.real() / pi - 1.0) / 2.0));
    const double d = std::abs(z - cplx((2 * k + 1) * pi, 0.0));
    if (d < dist) {
      dist = d;
      best = k;
    }
  }
  return best;
}

int run_component(const Common& c, const ComponentArgs& a) {
  const Parameter seed(parse_complex(c.v));
  ComponentRecord rec;
  if (a.p) {
    rec.kind = ParamKind::D;
    rec.p = *a.p;
    rec.k = a.k.value_or(0);
    rec.center = find_center_typeD(seed, rec.p, rec.k).value();
  } else if (a.m) {
    rec.kind = ParamKind::C;
    rec.m = *a.m;
    const Parameter ctr = find_center_typeC(seed, rec.m, a.k);
    rec.center = ctr.value();
    rec.k = classify(ctr).k;
  } else {
    const ParamClass pc = classify(seed);
    rec.kind = pc.kind;
    if (pc.kind == ParamKind::C) {
      rec.m = pc.m;
      const Parameter ctr = find_center_typeC(seed, pc.m, pc.k);
      rec.center = ctr.value();
      rec.k = pc.k;
    } else if (pc.kind == ParamKind::D) {
      rec.p = pc.certificate.period;
      rec.k = a.k.value_or(nearest_odd_critical(pc.certificate.cycle));
      rec.center = find_center_typeD(seed, rec.p, rec.k).value();
    } else if (pc.kind != ParamKind::A) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("seed classifies as ") + to_string(pc.kind) + ", not a hyperbolic component");
    }
  }
  std::printf("component %s", to_string(rec.kind));
  if (rec.kind == ParamKind::C)
    std::printf(" m=%d k=%d", rec.m, rec.k);
  if (rec.kind == ParamKind::D)
    std::printf(" p=%d k=%d", rec.p, rec.k);
  if (rec.center)
    std::printf(" center %.15g%+.15gi", rec.center->real(), rec.center->imag());
  std::printf("\n");

  const BoundaryTrace tr = trace_boundary(rec, a.steps);
  std::printf("boundary: %zu vertices at level %g, max step %.3g, closure gap %.3g\n",
              tr.vertices.size(), tr.level, tr.max_step, tr.closure_gap);
  if (!c.csv.empty()) {
    std::ostringstream s;
    write_polyline_csv(s, polyline_rows(tr));
    write_csv_to(c.csv, s.str());
  }
  return 0;
}

int run_verify(const Common& c, unsigned seed) {
  VerifyOptions o;
  if (!c.px.empty())
    o.scan_px = parse_px(c.px.find(',') == std::string::npos ? c.px + "," + c.px : c.px).first;
  if (c.threads > 0)
    o.threads = c.threads;
  o.seed = seed;
  const auto report = verify_suite(o);
  write_report_csv(std::cout, report);
  if (!c.csv.empty()) {
    std::ostringstream s;
    write_report_csv(s, report);
    write_text_file(c.csv, s.str());
  }
  return all_passed(report) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamics of the cosine family f_v(z) = v (cos z - 1)"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; command-line flags override it");

  Common c;
  RayArgs r;
  ComponentArgs comp;
  unsigned verify_seed = VerifyOptions{}.seed;

  auto scan_opts = [&](CLI::App* s, const char* bbox, const char* px) {
    s->add_option("--bbox", c.bbox, "x0,y0,x1,y1")->default_val(bbox);
    s->add_option("--px", c.px, "W,H")->default_val(px);
    s->add_option("--max-iter", c.max_iter, "orbit iteration budget");
    s->add_option("--threads", c.threads, "worker threads, 0 for all cores")->default_val(0);
    s->add_option("--out", c.out, "PPM output path");
    s->add_option("--csv", c.csv, "CSV output path ('-' for stdout)");
    add_palette(s, c);
  };

  auto* scan = app.add_subcommand("scan", "classify a grid of parameters");
  scan_opts(scan, "-8,-8,8,8", "800,800");
  scan->add_option("--divisions", c.divisions, "basin grid cells per box half-width")->default_val(256);
  scan->add_option("--refinements", c.refinements, "resolution halvings before Undecided")->default_val(6);

  auto* dyn = app.add_subcommand("dyn", "orbit fates on a grid of the dynamical plane");
  scan_opts(dyn, "-6.283185307179586,-4,6.283185307179586,4", "800,510");
  dyn->add_option("--v", c.v, "parameter re,im")->required();

  auto ray_opts = [&](CLI::App* s) {
    s->add_option("--address", c.address, "\"pre|period\" of (j,k) pairs split by ';'")->required();
    s->add_option("--t-hi", r.t_hi, "starting potential")->default_val(5.0);
    s->add_option("--t-lo", r.t_lo, "final potential")->default_val(0.5);
    s->add_option("--steps", r.steps, "number of samples")->default_val(64);
    s->add_option("--csv", c.csv, "CSV output path ('-' for stdout)");
  };
  auto* ray = app.add_subcommand("ray", "trace a dynamic ray");
  ray_opts(ray);
  ray->add_option("--v", c.v, "parameter re,im")->required();

  auto* pray = app.add_subcommand("pray", "trace a parameter ray");
  ray_opts(pray);
  pray->add_option("--v", c.v, "seed parameter re,im (default: grid search in --bbox)");
  pray->add_option("--bbox", c.bbox, "seed search box x0,y0,x1,y1")->default_val("-8,-8,8,8");

  auto* component = app.add_subcommand("component", "center and boundary of a hyperbolic component");
  component->add_option("--v", c.v, "seed parameter re,im")->required();
  component->add_option("--m", comp.m, "entry time (type C)");
  component->add_option("--k", comp.k, "translate (C) or odd critical point index (D)");
  component->add_option("--p", comp.p, "period (type D)");
  component->add_option("--steps", comp.steps, "boundary vertices")->default_val(256);
  component->add_option("--csv", c.csv, "polyline CSV path ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "run the reproduction checks");
  verify->add_option("--px", c.px, "size N (or N,N) of the smoke-test scan");
  verify->add_option("--threads", c.threads, "threads for the smoke-test scan");
  verify->add_option("--csv", c.csv, "report CSV path");
  verify->add_option("--seed", verify_seed, "seed for the random samples");

  try {
    auto args = expand_config(argc, argv, {"scan", "dyn", "ray", "pray", "component", "verify"});
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (*scan) return run_scan(c);
    if (*dyn) return run_dyn(c);
    if (*ray) return run_ray(c, r);
    if (*pray) return run_pray(c, r);
    if (*component) return run_component(c, comp);
    if (*verify) return run_verify(c, verify_seed);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
