#pragma once

#include <functional>
#include <vector>

#include "poincare/taylor_flow.hpp"

namespace poincare {

// High-accuracy non-rigorous Taylor integration over doubles; used for
// coordinate-system setup, section construction and orbit polishing, never
// for enclosures.
struct PointFlowConfig {
    int order = 22;
    double tolerance = 5e-17;
    double minStep = 1e-13;
    double maxStep = 1e-1;
};

// State of the solution at time T.
Vector pointIntegrate(const VectorField& F, const Vector& x0, double T,
                      const PointFlowConfig& cfg = {});

// Variational matrix D_x phi(T, x0) propagated alongside the point solution.
Matrix monodromy(const VectorField& F, const Vector& x0, double T,
                 const PointFlowConfig& cfg = {});

// Integrate and report the state (and optionally the variational matrix) at
// each requested time; `times` must be nonnegative and strictly increasing.
void sampleFlow(const VectorField& F, const Vector& x0, const std::vector<double>& times,
                const std::function<void(int, const Vector&, const Matrix&)>& visit,
                bool withVariational, const PointFlowConfig& cfg = {});

// Sign-change scan of the linear form w.x - offset along the trajectory;
// returns (crossing time, crossing direction) pairs refined by secant steps.
struct CrossingEvent {
    double time;
    int direction;  // sign of d/dt (w . x) at the crossing
};
std::vector<CrossingEvent> scanSectionCrossings(const VectorField& F, const Vector& x0,
                                                const Vector& w, double offset, double tMax,
                                                const PointFlowConfig& cfg = {});

// Newton shooting refinement of an approximate periodic point.  The section
// coordinate of u stays pinned; the remaining coordinates and the period are
// the unknowns of phi(T, u) - u = 0.
struct PeriodicOrbit {
    Vector u;
    double period = 0;
    Matrix monodromy;
    double residual = 0;  // sup norm of phi(T,u) - u after the last sweep
};
PeriodicOrbit refinePeriodicOrbit(const VectorField& F, const Vector& u0, int sectionCoord,
                                  double T0, int sweeps = 10,
                                  const PointFlowConfig& cfg = {});

}  // namespace poincare
