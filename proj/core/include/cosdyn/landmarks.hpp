#pragma once

// Closed-form and root-found constants of the family on the two symmetry
// axes.

#include "cosdyn/family.hpp"

namespace cosdyn {

// On iR the type-A parameters are 0 < |v| < log(1 + sqrt 2); beyond it
// the critical orbit escapes.
double imaginary_axis_threshold();

struct ParabolicLandmark {
  double z0; // root of tan(z/2) = z in (-pi, -pi/2)
  double v1; // -1 / sin(z0); f_{v1}(z0) = z0 and f'_{v1}(z0) = 1
};
ParabolicLandmark real_axis_parabolic();

} // namespace cosdyn
