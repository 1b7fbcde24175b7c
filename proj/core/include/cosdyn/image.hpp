#pragma once

// Binary PPM (P6) output: "P6\n", "W H\n255\n", then W*H RGB triples,
// top row first.

#include "cosdyn/scan.hpp"

#include <string>

namespace cosdyn {

Rgb color_of(const ParamClass& c, const Palette& palette);
Rgb color_of(const PointFate& f, const Palette& palette);

std::string ppm_bytes(const FateGrid& grid, const Palette& palette);
std::string ppm_bytes(const DynGrid& grid, const Palette& palette);

// Throws Io when the file cannot be written.
void render_ppm(const FateGrid& grid, const Palette& palette, const std::string& path);
void render_ppm(const DynGrid& grid, const Palette& palette, const std::string& path);

} // namespace cosdyn
