#include "cosdyn/classify.hpp"

#include "cosdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace cosdyn {

namespace {

// Lean convergence test for grid cells: no cycle detection.
bool converges_to_zero(const Parameter& v, cplx z, double delta, double escape, int max_iter) {
  for (int n = 0; n <= max_iter; ++n) {
    if (std::abs(z) < delta)
      return true;
    if (!(std::abs(z.imag()) <= escape))
      return false;
    z = eval(v, z);
  }
  return false;
}

// Green value 2^-n log|a f^n(z)| taken once the orbit is inside
// D(0, delta), where the remaining correction is O(delta^2); nothing when
// the orbit does not get there.
std::optional<double> rough_green(const Parameter& v, cplx z, double delta, double escape,
                                  int max_iter) {
  double weight = 1.0;
  for (int n = 0; n <= max_iter; ++n) {
    if (std::abs(z) < delta)
      return weight * std::log(std::abs(0.5 * v.value() * z));
    if (!(std::abs(z.imag()) <= escape))
      return std::nullopt;
    z = eval(v, z);
    weight *= 0.5;
  }
  return std::nullopt;
}

bool basin_point(const Parameter& v, cplx z, double delta, double escape, int max_iter,
                 const std::optional<double>& level) {
  if (!level)
    return converges_to_zero(v, z, delta, escape, max_iter);
  const auto g = rough_green(v, z, delta, escape, max_iter);
  return g && *g < *level;
}

bool segment_converges(const Parameter& v, cplx a, cplx b, double resolution, const OrbitBudget& budget,
                       const std::optional<double>& level) {
  const double len = std::abs(b - a);
  const int n = std::max(4, static_cast<int>(std::ceil(len / (resolution / 8.0))));
  const double delta = budget.delta_for(v);
  for (int s = 0; s < n; ++s) {
    const cplx q = a + (b - a) * (static_cast<double>(s) / n);
    if (!basin_point(v, q, delta, budget.escape_imag, budget.max_iter, level))
      return false;
  }
  return true;
}

bool connects_to_marked(const Parameter& v, const BasinApprox& basin, cplx p,
                        const OrbitBudget& budget, bool* any_marked) {
  const auto [i, j] = basin.lattice_of(p);
  bool seen = false;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      if (!basin.marked(i + di, j + dj))
        continue;
      seen = true;
      if (segment_converges(v, p, basin.center(i + di, j + dj), basin.resolution(), budget,
                             basin.green_level())) {
        if (any_marked) *any_marked = true;
        return true;
      }
    }
  }
  if (any_marked) *any_marked = seen;
  return false;
}

// Cell adjacency can step over a separating band thinner than a cell, so a
// fill path is re-tested on a much finer sampling.
bool path_converges(const Parameter& v, cplx from, const std::vector<cplx>& path, double spacing,
                    const OrbitBudget& budget, const std::optional<double>& level) {
  if (path.empty())
    return false;
  if (!segment_converges(v, from, path.front(), spacing, budget, level))
    return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!segment_converges(v, path[i], path[i + 1], spacing, budget, level))
      return false;
  return true;
}

struct FillResult {
  BasinApprox basin;
  bool reached_target = false;
  // Cell centers from the cell that met the target back to a seed cell.
  std::vector<cplx> path;
  // Direction + 1 each accepted cell was entered from, 0 for seeds.
  std::vector<std::uint8_t> parent;
};

Rect include_point(Rect r, cplx z, double pad) {
  r.x_min = std::min(r.x_min, z.real() - pad);
  r.x_max = std::max(r.x_max, z.real() + pad);
  r.y_min = std::min(r.y_min, z.imag() - pad);
  r.y_max = std::max(r.y_max, z.imag() + pad);
  return r;
}

} // namespace

BasinApprox::BasinApprox(double resolution, Rect bbox) : resolution_(resolution), bbox_(bbox) {
  if (!(resolution > 0.0) || !std::isfinite(resolution))
    throw Error(ErrorCode::InvalidArgument, "basin resolution must be positive");
  if (bbox.degenerate() || !bbox.contains(cplx(0.0, 0.0)))
    throw Error(ErrorCode::InvalidArgument, "basin box must be non-degenerate and contain 0");
  i0_ = static_cast<int>(std::ceil(bbox.x_min / resolution));
  j0_ = static_cast<int>(std::ceil(bbox.y_min / resolution));
  nx_ = static_cast<int>(std::floor(bbox.x_max / resolution)) - i0_;
  ny_ = static_cast<int>(std::floor(bbox.y_max / resolution)) - j0_;
  if (!in_grid(-1, -1) || !in_grid(0, 0))
    throw Error(ErrorCode::InvalidArgument, "basin box must hold the four cells around 0");
  const double cells = static_cast<double>(nx_) * static_cast<double>(ny_);
  if (cells > 2.5e8)
    throw Error(ErrorCode::InvalidArgument, "basin grid too large for the requested resolution");
  mask_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), 0);
}

std::pair<int, int> BasinApprox::lattice_of(cplx z) const {
  return {static_cast<int>(std::floor(z.real() / resolution_)),
          static_cast<int>(std::floor(z.imag() / resolution_))};
}

std::vector<cplx> BasinApprox::marked_centers() const {
  std::vector<cplx> out;
  out.reserve(count_);
  for (int j = j0_; j < j0_ + ny_; ++j)
    for (int i = i0_; i < i0_ + nx_; ++i)
      if (marked(i, j))
        out.push_back(center(i, j));
  return out;
}

Rect BasinApprox::marked_bounds(int pad_cells) const {
  int lo_i = std::numeric_limits<int>::max(), hi_i = std::numeric_limits<int>::min();
  int lo_j = lo_i, hi_j = hi_i;
  for (int j = j0_; j < j0_ + ny_; ++j)
    for (int i = i0_; i < i0_ + nx_; ++i)
      if (marked(i, j)) {
        lo_i = std::min(lo_i, i);
        hi_i = std::max(hi_i, i);
        lo_j = std::min(lo_j, j);
        hi_j = std::max(hi_j, j);
      }
  if (lo_i > hi_i)
    return Rect::centered(pad_cells * resolution_);
  const double pad = pad_cells * resolution_;
  return {lo_i * resolution_ - pad, lo_j * resolution_ - pad, (hi_i + 1) * resolution_ + pad,
          (hi_j + 1) * resolution_ + pad};
}

Rect default_basin_box(const Parameter& v) {
  return Rect::centered(std::min(20.0, 4.0 + 16.0 / std::abs(v.value())));
}

double default_basin_resolution(const Parameter& v) {
  return default_basin_box(v).x_max / 256.0;
}

// Best-first region growing from the four cells around 0. With a target the queue is
// ordered by distance to it and the fill stops once the target connects;
// without one the order does not matter and the whole component is grown.
struct BasinBuilder {
static constexpr int di[4] = {1, -1, 0, 0};
static constexpr int dj[4] = {0, 0, 1, -1};

static std::vector<cplx> path_to(const FillResult& r, int i, int j) {
  std::vector<cplx> path;
  for (;;) {
    path.push_back(r.basin.center(i, j));
    const std::uint8_t d = r.parent[r.basin.index(i, j)];
    if (d == 0)
      return path;
    i -= di[d - 1];
    j -= dj[d - 1];
  }
}

// Inside when p joins a marked neighbor cell whose fill path back to a seed
// survives the fine re-test; Ambiguous when only leaky paths are found.
static Membership checked_membership(const Parameter& v, const FillResult& r, cplx p,
                                     const OrbitBudget& budget, double spacing) {
  const BasinApprox& b = r.basin;
  if (std::abs(p) < budget.delta_for(v))
    return Membership::Inside;
  const auto [i, j] = b.lattice_of(p);
  bool seen = false;
  for (int dj2 = -1; dj2 <= 1; ++dj2) {
    for (int di2 = -1; di2 <= 1; ++di2) {
      if (!b.marked(i + di2, j + dj2))
        continue;
      seen = true;
      const cplx c = b.center(i + di2, j + dj2);
      if (!segment_converges(v, p, c, b.resolution(), budget, b.green_level()))
        continue;
      if (path_converges(v, p, path_to(r, i + di2, j + dj2), spacing, budget, b.green_level()))
        return Membership::Inside;
    }
  }
  return seen ? Membership::Ambiguous : Membership::Outside;
}
static FillResult fill(const Parameter& v, double resolution, const Rect& bbox,
                       const FloodFillOptions& opts, const cplx* target) {
  opts.cell_budget.validate();
  FillResult out{BasinApprox(resolution, bbox), false, {}, {}};
  BasinApprox& b = out.basin;
  b.green_level_ = opts.green_level;
  const std::optional<double>& level = opts.green_level;
  const double delta = opts.cell_budget.delta_for(v);
  const double escape = opts.cell_budget.escape_imag;
  const int max_iter = opts.cell_budget.max_iter;

  // 0 = untested, 1 = in basin, 2 = rejected
  auto state = [&](int i, int j) -> std::uint8_t& { return b.mask_[b.index(i, j)]; };

  struct Item {
    double key;
    int i, j;
    bool operator<(const Item& o) const {
      if (key != o.key) return key > o.key;
      if (j != o.j) return j > o.j;
      return i > o.i;
    }
  };
  std::priority_queue<Item> queue;
  auto key_of = [&](int i, int j) {
    return target ? std::norm(b.center(i, j) - *target) : 0.0;
  };

  int ti = 0, tj = 0;
  if (target)
    std::tie(ti, tj) = b.lattice_of(*target);

  std::vector<std::uint8_t>& parent = out.parent;
  parent.assign(b.mask_.size(), 0);

  auto accept = [&](int i, int j, int from_dir) -> bool {
    state(i, j) = 1;
    parent[b.index(i, j)] = static_cast<std::uint8_t>(from_dir + 1);
    ++b.count_;
    if (b.on_edge(i, j) || b.count_ > opts.max_cells) {
      b.overflowed_ = true;
      return false;
    }
    if (target && std::abs(i - ti) <= 1 && std::abs(j - tj) <= 1 &&
        segment_converges(v, *target, b.center(i, j), resolution, opts.cell_budget, level)) {
      out.reached_target = true;
      out.path = path_to(out, i, j);
      return false;
    }
    queue.push({key_of(i, j), i, j});
    return true;
  };

  for (int j = -1; j <= 0; ++j)
    for (int i = -1; i <= 0; ++i)
      if (basin_point(v, b.center(i, j), delta, escape, max_iter, level)) {
        if (!accept(i, j, -1))
          return out;
      } else {
        state(i, j) = 2;
      }

  while (!queue.empty()) {
    const Item it = queue.top();
    queue.pop();
    for (int d = 0; d < 4; ++d) {
      const int i = it.i + di[d];
      const int j = it.j + dj[d];
      if (!b.in_grid(i, j) || state(i, j) != 0)
        continue;
      if (basin_point(v, b.center(i, j), delta, escape, max_iter, level)) {
        if (!accept(i, j, d))
          return out;
      } else {
        state(i, j) = 2;
      }
    }
  }
  const std::vector<cplx> pts = b.marked_centers();
  b.diameter_ = point_set_diameter(pts);
  return out;
}
};

BasinApprox basin_flood_fill(const Parameter& v, double resolution, const Rect& bbox,
                             const FloodFillOptions& opts) {
  return BasinBuilder::fill(v, resolution, bbox, opts, nullptr).basin;
}

Membership basin_membership(const Parameter& v, const BasinApprox& basin, cplx p,
                            const OrbitBudget& budget) {
  if (std::abs(p) < budget.delta_for(v))
    return Membership::Inside;
  bool any = false;
  if (connects_to_marked(v, basin, p, budget, &any))
    return Membership::Inside;
  return any ? Membership::Ambiguous : Membership::Outside;
}

const char* to_string(ParamKind kind) {
  switch (kind) {
  case ParamKind::A: return "A";
  case ParamKind::C: return "C";
  case ParamKind::D: return "D";
  case ParamKind::Escaping: return "Escaping";
  case ParamKind::Undecided: return "Undecided";
  }
  return "?";
}

namespace {

BasinApprox refine_around(const Parameter& v, const BasinApprox& basin, cplx p,
                          const FloodFillOptions& flood) {
  const double res = basin.resolution() / 2.0;
  Rect box = include_point(basin.marked_bounds(8), p, 8 * basin.resolution());
  box = include_point(box, cplx(0.0, 0.0), 8 * res);
  FloodFillOptions same = flood;
  same.green_level = basin.green_level();
  return basin_flood_fill(v, res, box, same);
}

Membership membership_refined(const Parameter& v, const BasinApprox& basin, cplx p,
                              const ClassifyOptions& opts, std::optional<BasinApprox>& scratch) {
  Membership m = basin_membership(v, basin, p, opts.budget);
  const BasinApprox* cur = &basin;
  for (int r = 0; r < opts.max_refinements && m == Membership::Ambiguous; ++r) {
    if (cur->overflowed())
      break;
    scratch.emplace(refine_around(v, *cur, p, opts.flood));
    cur = &*scratch;
    m = basin_membership(v, *cur, p, opts.budget);
  }
  return m;
}

} // namespace

int m_of_v(const Parameter& v, const BasinApprox& basin, const ClassifyOptions& opts) {
  const OrbitOutcome crit = orbit(v, v.critical_value(), opts.budget);
  if (crit.kind != Fate::ConvergedToZero)
    throw Error(ErrorCode::NotTypeC, "critical orbit does not converge to 0");
  cplx z = v.critical_value();
  for (int n = 1; n <= crit.entry_index; ++n) {
    z = eval(v, z);
    std::optional<BasinApprox> scratch;
    const Membership m = membership_refined(v, basin, z, opts, scratch);
    if (m == Membership::Inside)
      return n;
    if (m == Membership::Ambiguous)
      throw Error(ErrorCode::ResolutionLimit,
                  "entry time undecided at n = " + std::to_string(n) + " after refinement");
  }
  throw Error(ErrorCode::NotTypeC, "critical orbit never entered the basin approximation");
}

int k_of_v(const Parameter& v, int m, const BasinApprox& basin, const ClassifyOptions& opts) {
  if (m < 1)
    throw Error(ErrorCode::InvalidArgument, "entry time must be >= 1");
  const cplx z = iterate(v, v.critical_value(), m - 1);
  const std::vector<cplx> marked = basin.marked_centers();
  if (marked.empty())
    throw Error(ErrorCode::AmbiguousTranslate, "empty basin approximation");
  const int kc = static_cast<int>(std::lround(z.real() / two_pi));
  int best_k = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = kc - 2; k <= kc + 2; ++k) {
    const cplx w = z - two_pi * static_cast<double>(k);
    double d = std::numeric_limits<double>::infinity();
    for (const cplx& c : marked)
      d = std::min(d, std::abs(w - c));
    if (d < best_d) {
      best_d = d;
      best_k = k;
    }
  }
  if (best_k == 0)
    throw Error(ErrorCode::AmbiguousTranslate, "nearest translate is the basin itself");
  std::optional<BasinApprox> scratch;
  const cplx w = z - two_pi * static_cast<double>(best_k);
  if (membership_refined(v, basin, w, opts, scratch) != Membership::Inside)
    throw Error(ErrorCode::AmbiguousTranslate,
                "translate k = " + std::to_string(best_k) + " does not validate");
  return best_k;
}

ParamClass classify(const Parameter& v, const ClassifyOptions& opts) {
  ParamClass out;
  out.certificate = orbit(v, v.critical_value(), opts.budget);
  switch (out.certificate.kind) {
  case Fate::Escaped:
    out.kind = ParamKind::Escaping;
    return out;
  case Fate::Undecided:
    out.kind = ParamKind::Undecided;
    return out;
  case Fate::AttractedCycle:
    out.kind = ParamKind::D;
    out.p = out.certificate.period;
    return out;
  case Fate::ConvergedToZero:
    break;
  }

  out.resolution_dependent = true;
  const cplx cv = v.critical_value();
  if (out.certificate.entry_index == 0 && !opts.want_diameter) {
    out.kind = ParamKind::A;
    return out;
  }

  const double hw = opts.half_width.value_or(default_basin_box(v).x_max);
  double res = hw / opts.divisions;
  const Rect full_box = Rect::centered(hw);
  Rect box = full_box;
  if (opts.want_diameter)
    out.basin_diam = basin_flood_fill(v, res, box, opts.flood).diameter();

  // For type A the Boettcher map is conformal on {G < G(-2v)/2}, a disk
  // around 0 that contains -2v; 3/4 G(-2v) sits strictly between the two.
  // Every orbit point used for m and k lies below that level as well.
  ClassifyOptions lopts = opts;
  const OrbitBudget& cb = opts.flood.cell_budget;
  if (const auto g = rough_green(v, cv, cb.delta_for(v), cb.escape_imag, cb.max_iter);
      g && std::isfinite(*g))
    lopts.flood.green_level = 0.75 * *g;

  for (int attempt = 0; attempt <= opts.max_refinements; ++attempt) {
    FillResult fill = BasinBuilder::fill(v, res, box, lopts.flood, &cv);
    if (fill.reached_target) {
      if (path_converges(v, cv, fill.path, res / 8.0, cb, lopts.flood.green_level)) {
        out.kind = ParamKind::A;
        return out;
      }
      box = include_point(fill.basin.marked_bounds(8), cv, 8 * res);
      res /= 2.0;
      continue;
    } else if (fill.basin.overflowed()) {
      // Hitting the edge of a box shrunk for refinement says nothing.
      if (box == full_box || fill.basin.count() > lopts.flood.max_cells) {
        out.kind = ParamKind::A;
        return out;
      }
      box = full_box;
      continue;
    }
    const Membership mem = BasinBuilder::checked_membership(v, fill, cv, opts.budget, res / 8.0);
    if (mem == Membership::Inside) {
      out.kind = ParamKind::A;
      return out;
    }
    if (mem == Membership::Outside) {
      // An Outside verdict whose entry time or translate cannot be pinned
      // down usually means the fill missed a thin neck; refine instead.
      try {
        out.m = m_of_v(v, fill.basin, lopts);
        out.k = k_of_v(v, out.m, fill.basin, lopts);
        out.kind = ParamKind::C;
        return out;
      } catch (const Error&) {
        out.m = out.k = 0;
      }
    }
    box = include_point(fill.basin.marked_bounds(8), cv, 8 * res);
    res /= 2.0;
  }
  out.kind = ParamKind::Undecided;
  return out;
}

} // namespace cosdyn
