#include "cosdyn/image.hpp"

#include "cosdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace cosdyn {

namespace {

Rgb escape_color(int steps, const Palette& p) {
  const double q = std::clamp(std::log2(std::max(1, steps)) / std::log2(p.escape_steps), 0.0, 1.0);
  Rgb out;
  for (int i = 0; i < 3; ++i)
    out[i] = static_cast<std::uint8_t>(
        std::lround(p.escape_fast[i] + q * (p.escape_slow[i] - p.escape_fast[i])));
  return out;
}

template <class Grid> std::string encode(const Grid& grid, const Palette& palette) {
  std::string out = "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\n255\n";
  out.reserve(out.size() + 3 * grid.cells.size());
  for (const auto& cell : grid.cells) {
    const Rgb c = color_of(cell, palette);
    out.append(reinterpret_cast<const char*>(c.data()), 3);
  }
  return out;
}

void write_file(const std::string& bytes, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::Io, "cannot open " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f)
    throw Error(ErrorCode::Io, "write failed for " + path);
}

} // namespace

Rgb color_of(const ParamClass& c, const Palette& palette) {
  switch (c.kind) {
  case ParamKind::A:
    return palette.type_a;
  case ParamKind::C:
    return palette.type_c;
  case ParamKind::D:
    return palette.type_d;
  case ParamKind::Escaping:
    return escape_color(c.certificate.steps_used, palette);
  case ParamKind::Undecided:
    break;
  }
  return palette.undecided;
}

// Dynamical plane: points attracted to 0 use the type-A color, points
// attracted to another cycle the type-D color.
Rgb color_of(const PointFate& f, const Palette& palette) {
  switch (f.kind) {
  case Fate::ConvergedToZero:
    return palette.type_a;
  case Fate::AttractedCycle:
    return palette.type_d;
  case Fate::Escaped:
    return escape_color(f.steps_used, palette);
  case Fate::Undecided:
    break;
  }
  return palette.undecided;
}

std::string ppm_bytes(const FateGrid& grid, const Palette& palette) { return encode(grid, palette); }
std::string ppm_bytes(const DynGrid& grid, const Palette& palette) { return encode(grid, palette); }

void render_ppm(const FateGrid& grid, const Palette& palette, const std::string& path) {
  write_file(ppm_bytes(grid, palette), path);
}

void render_ppm(const DynGrid& grid, const Palette& palette, const std::string& path) {
  write_file(ppm_bytes(grid, palette), path);
}

} // namespace cosdyn
