#pragma once

// CSV writers and readers. Doubles are written with %.17g so every value
// reads back bit-exactly; an empty field is an absent optional.
//
//   parameter scan  re,im,kind,m,k,p,mult_abs,steps_used,basin_diam
//   dynamical scan  re,im,fate,period,mult_abs,steps_used
//   ray             t,re,im,residual,landed   (landed only on the last row)
//   polyline        index,t_or_r,re,im,residual

#include "cosdyn/components.hpp"
#include "cosdyn/ray_trace.hpp"
#include "cosdyn/scan.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cosdyn {

std::string format_double(double x);
// Throws InvalidArgument on malformed input.
double parse_double(const std::string& s);
ParamKind parse_kind(const std::string& s);
Fate parse_fate(const std::string& s);

// Splits one line; no quoting is needed for the schemas above.
std::vector<std::string> split_csv_line(const std::string& line);

struct ParamRow {
  double re = 0.0, im = 0.0;
  ParamKind kind = ParamKind::Undecided;
  int m = 0, k = 0, p = 0;
  double mult_abs = 0.0;
  int steps_used = 0;
  std::optional<double> basin_diam;
  friend bool operator==(const ParamRow&, const ParamRow&) = default;
};

struct DynRow {
  double re = 0.0, im = 0.0;
  Fate fate = Fate::Undecided;
  int period = 0;
  double mult_abs = 0.0;
  int steps_used = 0;
  friend bool operator==(const DynRow&, const DynRow&) = default;
};

struct RayRow {
  double t = 0.0, re = 0.0, im = 0.0, residual = 0.0;
  std::optional<bool> landed;
  friend bool operator==(const RayRow&, const RayRow&) = default;
};

struct PolylineRow {
  int index = 0;
  double t_or_r = 0.0, re = 0.0, im = 0.0, residual = 0.0;
  friend bool operator==(const PolylineRow&, const PolylineRow&) = default;
};

ParamRow param_row(const FateGrid& grid, int col, int row);

void write_param_csv(std::ostream& out, const FateGrid& grid);
void write_dyn_csv(std::ostream& out, const DynGrid& grid);
void write_ray_csv(std::ostream& out, const RayTrace& trace);
void write_polyline_csv(std::ostream& out, const std::vector<PolylineRow>& rows);

std::vector<PolylineRow> polyline_rows(const BoundaryTrace& trace);
std::vector<PolylineRow> polyline_rows(const RayTrace& trace);

// Readers check the header and the field count of every row.
std::vector<ParamRow> read_param_csv(std::istream& in);
std::vector<DynRow> read_dyn_csv(std::istream& in);
std::vector<RayRow> read_ray_csv(std::istream& in);
std::vector<PolylineRow> read_polyline_csv(std::istream& in);

// Opens the path for writing; throws Io.
void write_text_file(const std::string& path, const std::string& text);

} // namespace cosdyn
