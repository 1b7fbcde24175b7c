#include "cosdyn/csv.hpp"

#include "cosdyn/error.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace cosdyn {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  // strtod, unlike stod, accepts subnormals.
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || s.front() == ' ')
    throw Error(ErrorCode::InvalidArgument, "bad number \"" + s + "\"");
  return x;
}

namespace {

int parse_int(const std::string& s) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::InvalidArgument, "bad integer \"" + s + "\"");
  return x;
}

std::vector<std::vector<std::string>> read_table(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw Error(ErrorCode::InvalidArgument, "expected CSV header \"" + header + "\"");
  const std::size_t width = split_csv_line(header).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    auto fields = split_csv_line(line);
    if (fields.size() != width)
      throw Error(ErrorCode::InvalidArgument, "CSV row has " + std::to_string(fields.size()) +
                                                  " fields, expected " + std::to_string(width));
    rows.push_back(std::move(fields));
  }
  return rows;
}

const char* param_header = "re,im,kind,m,k,p,mult_abs,steps_used,basin_diam";
const char* dyn_header = "re,im,fate,period,mult_abs,steps_used";
const char* ray_header = "t,re,im,residual,landed";
const char* polyline_header = "index,t_or_r,re,im,residual";

} // namespace

ParamKind parse_kind(const std::string& s) {
  for (ParamKind k : {ParamKind::A, ParamKind::C, ParamKind::D, ParamKind::Escaping, ParamKind::Undecided})
    if (s == to_string(k))
      return k;
  throw Error(ErrorCode::InvalidArgument, "unknown kind \"" + s + "\"");
}

Fate parse_fate(const std::string& s) {
  for (Fate f : {Fate::ConvergedToZero, Fate::AttractedCycle, Fate::Escaped, Fate::Undecided})
    if (s == to_string(f))
      return f;
  throw Error(ErrorCode::InvalidArgument, "unknown fate \"" + s + "\"");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
    out.back().pop_back();
  return out;
}

ParamRow param_row(const FateGrid& grid, int col, int row) {
  const ParamClass& c = grid.at(col, row);
  const cplx v{grid.bbox.x_min + (col + 0.5) * grid.bbox.width() / grid.width,
               grid.bbox.y_max - (row + 0.5) * grid.bbox.height() / grid.height};
  return {v.real(), v.imag(), c.kind, c.m, c.k, c.p, std::abs(c.certificate.multiplier),
          c.certificate.steps_used, c.basin_diam};
}

void write_param_csv(std::ostream& out, const FateGrid& grid) {
  out << param_header << '\n';
  for (int r = 0; r < grid.height; ++r)
    for (int c = 0; c < grid.width; ++c) {
      const ParamRow p = param_row(grid, c, r);
      out << format_double(p.re) << ',' << format_double(p.im) << ',' << to_string(p.kind) << ','
          << p.m << ',' << p.k << ',' << p.p << ',' << format_double(p.mult_abs) << ','
          << p.steps_used << ',' << (p.basin_diam ? format_double(*p.basin_diam) : "") << '\n';
    }
}

void write_dyn_csv(std::ostream& out, const DynGrid& grid) {
  out << dyn_header << '\n';
  for (int r = 0; r < grid.height; ++r)
    for (int c = 0; c < grid.width; ++c) {
      const PointFate& f = grid.at(c, r);
      const double x = grid.bbox.x_min + (c + 0.5) * grid.bbox.width() / grid.width;
      const double y = grid.bbox.y_max - (r + 0.5) * grid.bbox.height() / grid.height;
      out << format_double(x) << ',' << format_double(y) << ',' << to_string(f.kind) << ','
          << f.period << ',' << format_double(f.multiplier_abs) << ',' << f.steps_used << '\n';
    }
}

void write_ray_csv(std::ostream& out, const RayTrace& trace) {
  out << ray_header << '\n';
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const RaySample& s = trace.samples[i];
    out << format_double(s.t) << ',' << format_double(s.z.real()) << ',' << format_double(s.z.imag())
        << ',' << format_double(s.residual) << ',';
    if (i + 1 == trace.samples.size())
      out << (trace.landed ? 1 : 0);
    out << '\n';
  }
}

void write_polyline_csv(std::ostream& out, const std::vector<PolylineRow>& rows) {
  out << polyline_header << '\n';
  for (const PolylineRow& r : rows)
    out << r.index << ',' << format_double(r.t_or_r) << ',' << format_double(r.re) << ','
        << format_double(r.im) << ',' << format_double(r.residual) << '\n';
}

std::vector<PolylineRow> polyline_rows(const BoundaryTrace& trace) {
  std::vector<PolylineRow> rows;
  for (std::size_t i = 0; i < trace.vertices.size(); ++i)
    rows.push_back({static_cast<int>(i), i < trace.t.size() ? trace.t[i] : 0.0,
                    trace.vertices[i].real(), trace.vertices[i].imag(),
                    i < trace.residuals.size() ? trace.residuals[i] : 0.0});
  return rows;
}

std::vector<PolylineRow> polyline_rows(const RayTrace& trace) {
  std::vector<PolylineRow> rows;
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const RaySample& s = trace.samples[i];
    rows.push_back({static_cast<int>(i), s.t, s.z.real(), s.z.imag(), s.residual});
  }
  return rows;
}

std::vector<ParamRow> read_param_csv(std::istream& in) {
  std::vector<ParamRow> out;
  for (const auto& f : read_table(in, param_header)) {
    ParamRow r{parse_double(f[0]), parse_double(f[1]), parse_kind(f[2]), parse_int(f[3]),
               parse_int(f[4]), parse_int(f[5]), parse_double(f[6]), parse_int(f[7]), std::nullopt};
    if (!f[8].empty())
      r.basin_diam = parse_double(f[8]);
    out.push_back(r);
  }
  return out;
}

std::vector<DynRow> read_dyn_csv(std::istream& in) {
  std::vector<DynRow> out;
  for (const auto& f : read_table(in, dyn_header))
    out.push_back({parse_double(f[0]), parse_double(f[1]), parse_fate(f[2]), parse_int(f[3]),
                   parse_double(f[4]), parse_int(f[5])});
  return out;
}

std::vector<RayRow> read_ray_csv(std::istream& in) {
  std::vector<RayRow> out;
  for (const auto& f : read_table(in, ray_header)) {
    RayRow r{parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]),
             std::nullopt};
    if (!f[4].empty())
      r.landed = parse_int(f[4]) != 0;
    out.push_back(r);
  }
  return out;
}

std::vector<PolylineRow> read_polyline_csv(std::istream& in) {
  std::vector<PolylineRow> out;
  for (const auto& f : read_table(in, polyline_header))
    out.push_back({parse_int(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]),
                   parse_double(f[4])});
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::Io, "cannot open " + path);
  f << text;
  if (!f)
    throw Error(ErrorCode::Io, "write failed for " + path);
}

} // namespace cosdyn
