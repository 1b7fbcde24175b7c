#include "cosdyn/scan.hpp"

#include "cosdyn/error.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace cosdyn {

void ScanConfig::validate() const {
  if (bbox.degenerate())
    throw Error(ErrorCode::InvalidArgument, "scan box is degenerate");
  if (width <= 0 || height <= 0 || tile <= 0 || threads < 0)
    throw Error(ErrorCode::InvalidArgument, "scan sizes must be positive");
  if (palette.escape_steps < 2)
    throw Error(ErrorCode::InvalidArgument, "palette escape_steps must be >= 2");
  classify.budget.validate();
  dyn_budget.validate();
}

cplx ScanConfig::pixel_center(int col, int row) const {
  return {bbox.x_min + (col + 0.5) * bbox.width() / width,
          bbox.y_max - (row + 0.5) * bbox.height() / height};
}

int ScanConfig::worker_count() const {
  if (threads > 0)
    return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_pixel(const ScanConfig& cfg, const std::function<void(int, int)>& body) {
  cfg.validate();
  const int tiles_x = (cfg.width + cfg.tile - 1) / cfg.tile;
  const int tiles_y = (cfg.height + cfg.tile - 1) / cfg.tile;
  const int n_tiles = tiles_x * tiles_y;
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_lock;

  auto work = [&] {
    for (int t = next++; t < n_tiles && !stop; t = next++) {
      const int c0 = (t % tiles_x) * cfg.tile;
      const int r0 = (t / tiles_x) * cfg.tile;
      try {
        for (int r = r0; r < std::min(r0 + cfg.tile, cfg.height); ++r)
          for (int c = c0; c < std::min(c0 + cfg.tile, cfg.width); ++c)
            body(c, r);
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure)
          failure = std::current_exception();
        stop = true;
      }
    }
  };

  const int n = std::min(cfg.worker_count(), n_tiles);
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i)
    pool.emplace_back(work);
  work();
  for (auto& th : pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
}

FateGrid scan_parameter_plane(const ScanConfig& cfg) {
  cfg.validate();
  FateGrid grid{cfg.bbox, cfg.width, cfg.height, {}};
  grid.cells.resize(static_cast<std::size_t>(cfg.width) * static_cast<std::size_t>(cfg.height));
  for_each_pixel(cfg, [&](int c, int r) {
    const cplx v = cfg.pixel_center(c, r);
    ParamClass& out = grid.cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(cfg.width) +
                                 static_cast<std::size_t>(c)];
    if (v == cplx(0.0, 0.0))
      return; // Undecided: the family degenerates at v = 0
    try {
      out = classify(Parameter(v), cfg.classify);
    } catch (const Error&) {
      out = ParamClass{};
    }
  });
  return grid;
}

DynGrid scan_dynamical_plane(const Parameter& v, const ScanConfig& cfg) {
  cfg.validate();
  DynGrid grid{cfg.bbox, cfg.width, cfg.height, {}};
  grid.cells.resize(static_cast<std::size_t>(cfg.width) * static_cast<std::size_t>(cfg.height));
  for_each_pixel(cfg, [&](int c, int r) {
    PointFate& out = grid.cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(cfg.width) +
                                static_cast<std::size_t>(c)];
    try {
      const OrbitOutcome o = orbit(v, cfg.pixel_center(c, r), cfg.dyn_budget);
      out = {o.kind, o.steps_used, o.period, std::abs(o.multiplier)};
    } catch (const Error&) {
      out = PointFate{};
    }
  });
  return grid;
}

} // namespace cosdyn
