#pragma once

#include "poincare/section.hpp"
#include "poincare/solver.hpp"

namespace poincare {

struct PoincareOptions {
    // Crossings earlier than this flight time are ignored.  Zero means
    // "derive": ten times the first accepted solver step.
    double minFlight = 0;
    double maxReturnTime = 200;
    int maxNewtonIterations = 5;
    double newtonImprovement = 0.10;  // stop when one sweep gains less than this
    int maxSubdivisions = 3;          // detection retries at reduced step size
};

// A verified bracket of one section crossing.  `X1` is the propagated set at
// the bracket origin (a solver grid point); `window` enclosing the crossing
// time and the tube are relative to that origin.
struct CrossingBracket {
    Doubleton X1;
    Interval originTime;  // absolute time of X1 within the return chain
    Interval window;      // crossing time relative to the origin, in [0, ...)
    std::vector<TubeSegment> tube;
    Interval flowForm;    // grad(alpha) . f over the crossing tube
    int direction = 0;    // verified sign of the crossing
    bool transversal = false;
    Doubleton after;      // set strictly past the crossing (next grid point)
    Interval afterTime;
};

enum class FrameStrategy { Cartesian, DiagNormal, DiagFlowDir, Custom };

// Affine chart z = A (x - y) used to report the Poincare image.
struct CoordinateFrame {
    Vector y;
    Matrix B;         // point matrix whose verified inverse is A
    IntervalMatrix A;
    FrameStrategy strategy = FrameStrategy::Cartesian;
    bool sectionAdapted = false;  // y on the section, B cols 2..n span T_y Pi

    static CoordinateFrame cartesian(int n) {
        CoordinateFrame f;
        f.y = Vector::Zero(n);
        f.B = Matrix::Identity(n, n);
        f.A = IntervalMatrix::identity(n);
        f.strategy = FrameStrategy::Cartesian;
        f.sectionAdapted = false;
        return f;
    }
};

// Result of the return-map computation: enclosure z of A(P(X) - y), the
// refined return time and the individual terms kept for diagnostics.
struct PoincareEnclosure {
    Interval returnTime;
    IntervalVector z;
    IntervalVector y0;      // affineTransform(X0, A, y)
    IntervalVector yFlow;   // eval(X0, A o f) * dt
    IntervalVector dy;      // second-order time remainder
    std::optional<IntervalVector> sectionProjection;  // (0, z2, ..., zn)
};

// Find and verify the first constrained crossing of the section by the flow
// of X, starting the chain at time zero.
CrossingBracket detectCrossing(const VectorField& F, const RepresentableSet& X,
                               const Section& section, const SolverConfig& cfg,
                               const PoincareOptions& opts = {});

// Continuation variant used for chained crossings.
CrossingBracket detectCrossingFrom(const VectorField& F, const Doubleton& start,
                                   const Interval& startTime, const Section& section,
                                   int direction, const LohnerSolver& solver,
                                   const PoincareOptions& opts);

// One interval-Newton sweep on the bracket (Algorithm stays inside the
// current window); returns the absolute refined window without committing.
Interval newtonReturnTimeStep(const CrossingBracket& bracket, const Section& section,
                              const LohnerSolver& solver);

// Iterated interval-Newton refinement; the bracket is updated in place
// (origin shifted, tube recomputed) and the absolute window returned.
Interval refineReturnTime(CrossingBracket& bracket, const Section& section,
                          const VectorField& F, const SolverConfig& cfg,
                          const PoincareOptions& opts = {});

// Enclosure of A(P(X) - y) from a refined bracket.
PoincareEnclosure computePoincareMap(const CrossingBracket& bracket, const Section& section,
                                     const VectorField& F, const CoordinateFrame& frame,
                                     const SolverConfig& cfg);

// Full pipeline: detect `crossings` chained crossings (directions alternate
// so that the last one matches the launch direction), refine the final
// bracket and evaluate the map in the given frame.
PoincareEnclosure poincareReturn(const VectorField& F, const RepresentableSet& X,
                                 const Section& section, const CoordinateFrame& frame,
                                 int crossings, const SolverConfig& cfg,
                                 const PoincareOptions& opts = {});

// (0, z_2, ..., z_n) for section-adapted frames; P(X) is recovered as
// y + B * result.
IntervalVector projectToSection(const PoincareEnclosure& enc, const CoordinateFrame& frame,
                                const Section& section);

}  // namespace poincare
