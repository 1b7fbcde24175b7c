#pragma once

// Parameter classification: type A (critical value in the immediate basin
// of 0), type C{m,k} (captured after m steps), type D{p} (attracted by a
// cycle other than 0), escaping, or undecided.
//
// Membership in the immediate basin B_v is decided against a flood-filled
// grid approximation of B_v. That test is a finite-resolution heuristic:
// verdicts near component boundaries can be wrong, and points that stay
// ambiguous after refinement are reported as Undecided.

#include "cosdyn/family.hpp"
#include "cosdyn/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cosdyn {

struct FloodFillOptions {
  // Budget used to decide whether a cell center converges to 0.
  OrbitBudget cell_budget;
  std::size_t max_cells = std::size_t{1} << 20;
  // When set, only points with Green value below this level count as
  // basin points. Sublevel sets of the Green function stay a band away
  // from the boundary, so the fill cannot jump between basin components
  // that come closer than a cell.
  std::optional<double> green_level;
};

class BasinApprox {
public:
  BasinApprox(double resolution, Rect bbox);

  double resolution() const { return resolution_; }
  const Rect& bbox() const { return bbox_; }
  const std::optional<double>& green_level() const { return green_level_; }
  int columns() const { return nx_; }
  int rows() const { return ny_; }

  // Cell (i, j) is the square [i, i+1] x [j, j+1] scaled by the resolution.
  // Centers sit off both axes: real orbits of real v (and imaginary ones of
  // imaginary v) are often chaotic and would leak the fill along the axis.
  // The lattice is still symmetric, cell (i, j) <-> (-1-i, -1-j).
  std::pair<int, int> lattice_of(cplx z) const;
  cplx center(int i, int j) const { return {(i + 0.5) * resolution_, (j + 0.5) * resolution_}; }
  bool in_grid(int i, int j) const {
    return i >= i0_ && i < i0_ + nx_ && j >= j0_ && j < j0_ + ny_;
  }
  bool marked(int i, int j) const {
    return in_grid(i, j) && mask_[index(i, j)] != 0;
  }
  void mark(int i, int j) { mask_[index(i, j)] = 1; }
  bool on_edge(int i, int j) const {
    return i == i0_ || j == j0_ || i == i0_ + nx_ - 1 || j == j0_ + ny_ - 1;
  }

  std::size_t count() const { return count_; }
  bool overflowed() const { return overflowed_; }
  // Max pairwise distance of marked cell centers.
  double diameter() const { return diameter_; }
  std::vector<cplx> marked_centers() const;
  // Bounding box of the marked cells, padded by the given number of cells.
  Rect marked_bounds(int pad_cells) const;

private:
  friend struct BasinBuilder;
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j - j0_) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i - i0_);
  }

  double resolution_;
  Rect bbox_;
  std::optional<double> green_level_;
  int i0_ = 0, j0_ = 0, nx_ = 0, ny_ = 0;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
  bool overflowed_ = false;
  double diameter_ = 0.0;
};

Rect default_basin_box(const Parameter& v);
double default_basin_resolution(const Parameter& v);

// Region-grows from the cell of 0 through 4-connected cells whose centers
// converge to 0. The result is flagged overflowed when the fill reaches the
// edge of the box or exceeds max_cells; an unbounded immediate basin is the
// type-A signature. Throws InvalidArgument for a box not containing 0 or a
// non-positive resolution.
BasinApprox basin_flood_fill(const Parameter& v, double resolution, const Rect& bbox,
                             const FloodFillOptions& opts = {});

enum class Membership { Inside, Outside, Ambiguous };

// Point-in-basin test with a one-cell guard band: Inside when p lies in
// D(0, delta) or connects to a marked cell of its 3x3 neighborhood by a
// finely sampled segment of converging points; Outside when no cell of the
// neighborhood is marked; Ambiguous otherwise.
Membership basin_membership(const Parameter& v, const BasinApprox& basin, cplx p,
                            const OrbitBudget& budget);

enum class ParamKind { A, C, D, Escaping, Undecided };

const char* to_string(ParamKind kind);

struct ParamClass {
  ParamKind kind = ParamKind::Undecided;
  int m = 0;
  int k = 0;
  int p = 0;
  OrbitOutcome certificate;
  std::optional<double> basin_diam;
  // Set on every A/C verdict: the split relies on the finite-resolution
  // basin test.
  bool resolution_dependent = false;
};

struct ClassifyOptions {
  OrbitBudget budget;
  FloodFillOptions flood;
  // Resolution is half_width / divisions for the default box.
  double divisions = 256.0;
  int max_refinements = 6;
  // Overrides the default box half-width min(20, 4 + 16/|v|).
  std::optional<double> half_width;
  // Report the diameter of the full basin fill (an extra fill; the
  // classification itself floods a Green sublevel set).
  bool want_diameter = false;
};

ParamClass classify(const Parameter& v, const ClassifyOptions& opts = {});

// Entry time: smallest n >= 1 with f^n(-2v) in the basin approximation.
// Ambiguous hits are refined by halving the resolution up to
// opts.max_refinements times; throws ResolutionLimit when that is not
// enough, NotTypeC when the critical orbit does not converge to 0.
int m_of_v(const Parameter& v, const BasinApprox& basin, const ClassifyOptions& opts = {});

// Translate index: f^{m-1}(-2v) lies in B_v + 2k pi. Throws
// AmbiguousTranslate when refinement cannot single out k.
int k_of_v(const Parameter& v, int m, const BasinApprox& basin, const ClassifyOptions& opts = {});

} // namespace cosdyn
