#pragma once

// Tile-parallel scanners over the parameter plane and the dynamical plane.
// Pixel (col, row) has center
//   x = x_min + (col + 1/2) w / W,   y = y_max - (row + 1/2) h / H,
// so row 0 is the top row. Results never depend on the thread count.

#include "cosdyn/classify.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace cosdyn {

using Rgb = std::array<std::uint8_t, 3>;

struct Palette {
  Rgb type_a{0, 0, 0};
  Rgb type_c{64, 64, 64};
  Rgb type_d{128, 128, 128};
  Rgb undecided{255, 0, 0};
  // Escaping pixels go from escape_fast to escape_slow as
  // log2(steps) / log2(escape_steps) runs from 0 to 1.
  Rgb escape_fast{255, 255, 255};
  Rgb escape_slow{0, 0, 255};
  int escape_steps = 64;
};

struct ScanConfig {
  Rect bbox = Rect::centered(8.0);
  int width = 800;
  int height = 800;
  int threads = 0; // 0: hardware concurrency
  int tile = 64;
  ClassifyOptions classify;
  OrbitBudget dyn_budget;
  Palette palette;

  // Throws InvalidArgument.
  void validate() const;
  cplx pixel_center(int col, int row) const;
  int worker_count() const;
};

struct FateGrid {
  Rect bbox;
  int width = 0;
  int height = 0;
  std::vector<ParamClass> cells; // row-major, top row first

  const ParamClass& at(int col, int row) const {
    return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(col)];
  }
};

struct PointFate {
  Fate kind = Fate::Undecided;
  int steps_used = 0;
  int period = 0;
  double multiplier_abs = 0.0;
};

struct DynGrid {
  Rect bbox;
  int width = 0;
  int height = 0;
  std::vector<PointFate> cells;

  const PointFate& at(int col, int row) const {
    return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(col)];
  }
};

FateGrid scan_parameter_plane(const ScanConfig& cfg);
DynGrid scan_dynamical_plane(const Parameter& v, const ScanConfig& cfg);

// Runs body(col, row) for every pixel; tiles of cfg.tile x cfg.tile pixels
// are handed to the workers through an atomic counter. The first exception
// thrown by body is rethrown after all workers stop.
void for_each_pixel(const ScanConfig& cfg, const std::function<void(int, int)>& body);

} // namespace cosdyn
