#pragma once

#include <vector>

#include "poincare/sets.hpp"
#include "poincare/taylor_flow.hpp"

namespace poincare {

struct SolverConfig {
    int order = 20;           // Taylor order, sensible range 5..30
    double tolerance = 1e-18; // local error target per step
    double initialStep = 5e-2;
    double minStep = 1e-10;
    double maxStep = 1e-1;
    double inflation = 1.5;   // a-priori enclosure growth per retry
    int maxPicardRetries = 15;
    int maxStepRejections = 40;
};

// Enclosure of the solution over one time window.
struct TubeSegment {
    Interval time;       // window relative to the integration start
    IntervalVector box;  // contains phi(t, x) for all t in the window
};

struct StepResult {
    Doubleton next;                     // contains phi(h, X)
    IntervalVector trajectoryEnclosure; // contains phi([0,h], X) and next
    double stepUsed = 0;
};

// Exact accumulation of step sizes as a double-double pair, reported as a
// thin interval.  Keeps return-time bookkeeping noise at the ulp level.
class ExactSum {
public:
    void add(double v) {
        double s = hi_ + v;
        double bb = s - hi_;
        double err = (hi_ - (s - bb)) + (v - bb);
        hi_ = s;
        double t = lo_ + err;
        double bb2 = t - lo_;
        double err2 = (lo_ - (t - bb2)) + (err - bb2);
        lo_ = t;
        tail_ += err2;
    }
    Interval enclosure() const {
        Interval r = Interval(hi_) + Interval(lo_);
        double pad = std::fabs(tail_) + 1e-300;
        return r + Interval::raw(-pad, pad);
    }
    double approx() const { return hi_ + lo_; }

private:
    double hi_ = 0, lo_ = 0, tail_ = 0;
};

// Fold any representable set into the doubleton the solver propagates.  The
// tripleton's second factor is folded into the accumulated-error part by a
// verified linear solve.
Doubleton toDoubleton(const RepresentableSet& X);

// Validated one-step Taylor integrator with Lohner QR doubleton propagation.
class LohnerSolver {
public:
    LohnerSolver(const VectorField& F, SolverConfig cfg = {});

    // First-order Picard enclosure: returns E with phi(t, x) in E for all
    // t in [0, h] (and t in [-h, 0] when twoSided), x in X.  Throws
    // StepRejected when validation fails after the configured retries.
    IntervalVector aprioriEnclosure(const IntervalVector& X, double h,
                                    bool twoSided = false) const;

    // One validated step; the step size is chosen adaptively and capped by
    // hMax when positive.
    StepResult oneStep(const Doubleton& X, double hMax = 0) const;

    struct Flow {
        Doubleton end;
        Interval elapsed;               // encloses the exact flow time of `end`
        std::vector<TubeSegment> tube;  // covers [0, max(t, elapsed)]
    };

    // Propagate the set for time t > 0.  phi(t, point set) is contained in
    // the returned end set; the tube covers [0, t].
    Flow integrateTo(const RepresentableSet& X, double t) const;

    // Hull of phi([0, tau], X).
    IntervalVector evalOverTimeRange(const RepresentableSet& X, double tau) const;

    const VectorField& field() const { return F_; }
    const SolverConfig& config() const { return cfg_; }

private:
    double predictStep(const std::vector<IJet>& pointJets, double scale) const;

    const VectorField& F_;
    SolverConfig cfg_;
};

}  // namespace poincare
