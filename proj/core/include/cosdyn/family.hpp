#pragma once

// The cosine family f_v(z) = v (cos z - 1), v != 0.
//
// Critical points are k*pi; the critical values are 0 (a superattracting
// fixed point) and the free value -2v. Everything else in the library is
// built on the evaluation and orbit primitives declared here.

#include <complex>
#include <optional>
#include <vector>

namespace cosdyn {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

class Parameter {
public:
  // Throws Error(InvalidArgument) for v == 0 or non-finite v.
  explicit Parameter(cplx v);

  cplx value() const noexcept { return v_; }
  cplx critical_value() const noexcept { return -2.0 * v_; }
  Parameter negated() const { return Parameter(-v_); }

  friend bool operator==(const Parameter&, const Parameter&) = default;

private:
  cplx v_;
};

cplx eval(const Parameter& v, cplx z);
cplx deriv(const Parameter& v, cplx z);
cplx second_deriv(const Parameter& v, cplx z);

// n-fold iterate.
cplx iterate(const Parameter& v, cplx z, int n);

// z_n = f^n_v(z) together with d z_n / d v, starting from the given
// derivative of z_0 with respect to v (use -2 for the critical value).
struct VJet {
  cplx z;
  cplx dz_dv;
};
VJet iterate_with_dv(const Parameter& v, cplx z0, cplx dz0_dv, int n);

// Forward-mode jet of the period-p return map and its multiplier with
// respect to the starting point and the parameter.
struct CycleJet {
  cplx value;      // f^p(z)
  cplx d_dz;       // (f^p)'(z), the multiplier
  cplx d_dv;       // d f^p(z) / dv
  cplx mult_dz;    // d multiplier / dz
  cplx mult_dv;    // d multiplier / dv
};
CycleJet cycle_jet(const Parameter& v, cplx z, int p);

struct OrbitBudget {
  int max_iter = 2000;
  // Radius of the disk around 0 that certifies convergence. Unset means
  // min(0.05, 1 / (4|v|)).
  std::optional<double> convergence_radius;
  double escape_imag = 50.0;
  double detect_tol = 1e-6;
  double cycle_tol = 1e-12;
  int newton_max_steps = 64;

  // Throws Error(InvalidArgument) when the budget is unusable.
  void validate() const;
  double delta_for(const Parameter& v) const;
};

double default_convergence_radius(const Parameter& v);

enum class Fate { ConvergedToZero, AttractedCycle, Escaped, Undecided };

const char* to_string(Fate fate);

struct OrbitOutcome {
  Fate kind = Fate::Undecided;
  int steps_used = 0;
  int entry_index = -1;
  std::vector<cplx> cycle;
  int period = 0;
  cplx multiplier{0.0, 0.0};
  bool renormalizable = false;
};

OrbitOutcome orbit(const Parameter& v, cplx z0, const OrbitBudget& budget = {});

struct Cycle {
  std::vector<cplx> points;
  cplx multiplier;
  double residual = 0.0;
};

struct CycleOptions {
  double tol = 1e-12;
  int max_steps = 64;
  bool minimize_period = true;
};

// Newton on f^p(z) - z from the seed. The returned cycle starts at the
// refined point; the period may be reduced to a proper divisor when the
// refined point already closes up earlier.
Cycle find_cycle(const Parameter& v, cplx seed, int p, const CycleOptions& opts = {});

} // namespace cosdyn
