#pragma once

#include "poincare/section.hpp"

namespace poincare {

// Embedded Dormand-Prince 5(4) integration over plain doubles.  This is a
// deliberately independent route from the Taylor machinery: it only shares
// the vector-field evaluation, so containment cross-checks of the rigorous
// solver do not reuse the code path under test.
struct RkOptions {
    double relTol = 1e-12;
    double absTol = 1e-13;
    double initialStep = 1e-3;
    double maxStep = 0.25;
};

Vector rkIntegrate(const VectorField& F, const Vector& x0, double T,
                   const RkOptions& opts = {});

// Return time and image after `crossings` direction-filtered crossings of an
// affine section, located by sign scanning plus secant refinement.
struct RkReturn {
    double time = 0;
    Vector point;
};
RkReturn rkPoincare(const VectorField& F, const Vector& x0, const Section& section,
                    int crossings, double tMax, const RkOptions& opts = {});

}  // namespace poincare
