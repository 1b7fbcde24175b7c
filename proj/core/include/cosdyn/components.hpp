#pragma once

// Hyperbolic components: centers, the multiplier map of type D, and
// boundary traces.

#include "cosdyn/boettcher.hpp"
#include "cosdyn/classify.hpp"

#include <optional>
#include <vector>

namespace cosdyn {

struct ComponentRecord {
  ParamKind kind = ParamKind::D; // A, C or D
  int m = 0;                     // C: entry time
  int k = 0;                     // C: translate index, D: odd critical point (2k+1) pi
  int p = 0;                     // D: period
  std::optional<cplx> center;    // C and D
  std::vector<cplx> boundary;
};

struct CenterOptions {
  double tol = 1e-13;
  int max_steps = 80;
  ClassifyOptions classify;
};

// Solves f^{m-1}_v(-2v) = 2k pi from the seed, which makes f^m_v(-2v) = 0
// with a simple root in v. k defaults to the seed's translate index. Throws
// NotTypeC / WrongEntryTime for an unsuitable seed, NoConvergence, and
// ClassDrift when the solution classifies differently from the seed.
Parameter find_center_typeC(const Parameter& seed, int m, std::optional<int> k = std::nullopt,
                            const CenterOptions& opts = {});

// Solves f^p_v((2k+1) pi) = (2k+1) pi. Throws NoConvergence, and Collision
// when the cycle through the critical point runs into 0 or an even critical
// point.
Parameter find_center_typeD(const Parameter& seed, int p, int k, const CenterOptions& opts = {});

// Multiplier of the attracting cycle of the critical orbit. Throws NotTypeD
// unless the critical orbit is attracted by a cycle of period p.
cplx multiplier_map(const Parameter& v, int p, const OrbitBudget& budget = {});

struct BoundaryOptions {
  // A/C traces follow |Phi| = 1 - eps instead of the boundary itself.
  double eps = 1e-3;
  // Tolerance on the Green-function level for A/C vertices.
  double level_tol = 1e-12;
  // Orbits near the A/C boundary converge slowly.
  OrbitBudget level_budget = [] {
    OrbitBudget b;
    b.max_iter = 20000;
    return b;
  }();
  int max_halvings = 16;
  double newton_tol = 1e-12;
  int newton_max_steps = 40;
  BoettcherOptions boettcher;
};

struct BoundaryTrace {
  std::vector<cplx> vertices;
  std::vector<double> t;         // curve parameter of each vertex, in [0, 1)
  std::vector<double> residuals; // defect of the solved equations per vertex
  double max_step = 0.0;         // largest distance between consecutive vertices
  double closure_gap = 0.0;      // |last - first|
  // For D: the cycle point that goes with each vertex.
  std::vector<cplx> cycle_points;
  // The level actually traced: 1 for D, 1 - eps for A and C.
  double level = 1.0;
};

// Type D: continuation of f^p(z) = z, (f^p)'(z) = e^{2 pi i t} from the
// center, t uniform. Types A/C: the level set |Phi| = 1 - eps followed in
// arc length from a point found by marching out of the center along the
// positive real direction (out of 0 for A), then resampled evenly; t is
// the arc-length fraction. Throws
// ContinuationStall when the continuation fails or does not close, and
// SelfIntersection when the polyline crosses itself.
BoundaryTrace trace_boundary(const ComponentRecord& record, int n_vertices,
                             const BoundaryOptions& opts = {});

} // namespace cosdyn
