#include "poincare/poincare_map.hpp"

#include <algorithm>
#include <cmath>

namespace poincare {

namespace {

// Hull of tube boxes whose time window intersects [0, upTo].
IntervalVector tubeHull(const std::vector<TubeSegment>& tube, double upTo) {
    IntervalVector acc;
    bool first = true;
    for (const auto& seg : tube) {
        if (seg.time.lo() > upTo) break;
        if (first) {
            acc = seg.box;
            first = false;
        } else {
            acc = hull(acc, seg.box);
        }
    }
    if (first) throw Error("empty tube");
    return acc;
}

// Adapter for eval(X, A o f).
class AffineFieldMap : public SmoothMap {
public:
    AffineFieldMap(const IntervalMatrix& A, const VectorField& F) : A_(A), F_(F) {}
    int domainDim() const override { return F_.dim(); }
    int rangeDim() const override { return A_.rows(); }
    IntervalVector value(const IntervalVector& x) const override {
        return matVec(A_, F_(x));
    }
    IntervalMatrix jacobian(const IntervalVector& x) const override {
        return matMul(A_, F_.jacobianAt(x));
    }

private:
    const IntervalMatrix& A_;
    const VectorField& F_;
};

int strictSide(const Interval& a) {
    if (a.hi() < 0) return -1;
    if (a.lo() > 0) return 1;
    return 0;
}

struct MarchState {
    Doubleton set;
    ExactSum elapsed;
};

}  // namespace

CrossingBracket detectCrossingFrom(const VectorField& F, const Doubleton& start,
                                   const Interval& startTime, const Section& section,
                                   int direction, const LohnerSolver& solver,
                                   const PoincareOptions& opts) {
    if (direction != 1 && direction != -1)
        throw DomainError("detectCrossingFrom: direction must be +1 or -1");
    const int beforeSide = -direction;  // alpha sign while approaching

    SolverConfig cfg = solver.config();
    for (int attempt = 0; attempt <= opts.maxSubdivisions; ++attempt) {
        LohnerSolver local(F, cfg);
        MarchState cur{start, {}};
        double minFlight = opts.minFlight;
        bool ambiguous = false;

        // Last grid state verified strictly on the approach side.
        bool haveEntry = false;
        MarchState entry;
        bool inWindow = false;
        std::vector<TubeSegment> windowTube;
        Interval windowFlowForm(0.0);

        {
            Interval a0 = section.evalOnSet(RepresentableSet(cur.set));
            if (strictSide(a0) == beforeSide) {
                haveEntry = true;
                entry = cur;
            }
        }

        while (cur.elapsed.approx() < opts.maxReturnTime) {
            StepResult step = local.oneStep(cur.set);
            Interval t0 = cur.elapsed.enclosure();
            MarchState next = cur;
            next.set = step.next;
            next.elapsed.add(step.stepUsed);
            Interval t1 = next.elapsed.enclosure();
            TubeSegment seg{hull(t0, t1), step.trajectoryEnclosure};
            if (minFlight == 0) minFlight = 10 * step.stepUsed;

            Interval aTube = section.value(seg.box);
            bool contact = aTube.contains(0.0);
            Interval gTube = contact ? section.flowForm(F, seg.box) : Interval(0.0);

            if (inWindow) {
                // Transversality must hold across the whole bracket.
                Interval g = section.flowForm(F, seg.box);
                if (g.contains(0.0)) {
                    ambiguous = true;
                    break;
                }
                windowTube.push_back(seg);
                windowFlowForm = hull(windowFlowForm, g);
                Interval aEnd = section.evalOnSet(RepresentableSet(next.set));
                if (strictSide(aEnd) == direction) {
                    // Bracket complete: re-base tube to the entry grid point.
                    CrossingBracket bracket;
                    bracket.X1 = entry.set;
                    Interval entryT = entry.elapsed.enclosure();
                    bracket.originTime = startTime + entryT;
                    Interval rel = t1 - entryT;
                    bracket.window = Interval::raw(0.0, rel.hi());
                    for (auto& s : windowTube)
                        s.time = s.time - entryT;
                    bracket.tube = std::move(windowTube);
                    bracket.flowForm = windowFlowForm;
                    bracket.direction = direction;
                    bracket.transversal = true;
                    bracket.after = next.set;
                    bracket.afterTime = startTime + t1;
                    return bracket;
                }
                if (strictSide(aEnd) == beforeSide) {
                    // The whole set is still before the section; restart the
                    // bracket from this tighter grid point.
                    inWindow = false;
                    windowTube.clear();
                    haveEntry = true;
                    entry = next;
                }
                cur = next;
                continue;
            }

            bool pastMinFlight = t1.hi() > minFlight;
            if (contact && pastMinFlight) {
                if (gTube.contains(0.0)) {
                    ambiguous = true;
                    break;
                }
                int gSign = gTube.lo() > 0 ? 1 : -1;
                if (gSign == direction) {
                    if (!haveEntry) {
                        ambiguous = true;
                        break;
                    }
                    // Entry must be the immediately preceding grid point so
                    // the tube is contiguous from there.
                    if (std::fabs(entry.elapsed.approx() - cur.elapsed.approx()) > 0) {
                        ambiguous = true;
                        break;
                    }
                    inWindow = true;
                    windowTube.clear();
                    windowTube.push_back(seg);
                    windowFlowForm = gTube;
                    Interval aEnd = section.evalOnSet(RepresentableSet(next.set));
                    if (strictSide(aEnd) == direction) {
                        CrossingBracket bracket;
                        bracket.X1 = entry.set;
                        Interval entryT = entry.elapsed.enclosure();
                        bracket.originTime = startTime + entryT;
                        Interval rel = t1 - entryT;
                        bracket.window = Interval::raw(0.0, rel.hi());
                        for (auto& s : windowTube) s.time = s.time - entryT;
                        bracket.tube = std::move(windowTube);
                        bracket.flowForm = windowFlowForm;
                        bracket.direction = direction;
                        bracket.transversal = true;
                        bracket.after = next.set;
                        bracket.afterTime = startTime + t1;
                        return bracket;
                    }
                    cur = next;
                    continue;
                }
                // Wrong-direction monotone passage: not on the constrained
                // section, keep marching.  The entry certificate is stale
                // until the set is verified on the approach side again.
                haveEntry = false;
            }

            if (!contact) {
                int side = strictSide(aTube);
                if (side == beforeSide) {
                    haveEntry = true;
                    entry = next;
                } else {
                    haveEntry = false;
                }
            } else if (!pastMinFlight) {
                haveEntry = false;
            }
            cur = next;
        }

        if (!ambiguous)
            throw NoCrossing("detectCrossing: no constrained crossing before maxReturnTime");
        cfg.maxStep /= 4;
        cfg.tolerance = std::max(cfg.tolerance / 16, 1e-22);
    }
    throw SignAmbiguous(
        "detectCrossing: section sign could not be resolved after subdivision");
}

CrossingBracket detectCrossing(const VectorField& F, const RepresentableSet& X,
                               const Section& section, const SolverConfig& cfg,
                               const PoincareOptions& opts) {
    LohnerSolver solver(F, cfg);
    Doubleton start = toDoubleton(X);
    int dir = signOf(section.direction());
    if (dir == 0) {
        // Unconstrained section: the first crossing opposes the launch
        // direction of the flow.
        Interval launch = section.flowForm(F, enclose(start));
        if (launch.contains(0.0))
            throw TangencyRisk("detectCrossing: launch direction not transversal");
        dir = launch.lo() > 0 ? -1 : 1;
    }
    return detectCrossingFrom(F, start, Interval(0.0), section, dir, solver, opts);
}

Interval newtonReturnTimeStep(const CrossingBracket& bracket, const Section& section,
                              const LohnerSolver& solver) {
    if (!bracket.transversal) throw TangencyRisk("refineReturnTime: bracket not transversal");
    const Interval R = bracket.window;
    const double t0 = R.mid();
    LohnerSolver::Flow mid = solver.integrateTo(RepresentableSet(bracket.X1), t0);
    Interval g0 = section.evalOnSet(RepresentableSet(mid.end));
    IntervalVector e = tubeHull(bracket.tube, R.hi());
    Interval g = section.flowForm(solver.field(), e);
    if (g.contains(0.0)) throw TangencyRisk("refineReturnTime: derivative encloses zero");
    Interval candidate = mid.elapsed - g0 / g;
    Interval refined = intersect(R, candidate);  // EmptyIntersection = inconsistency
    return bracket.originTime + refined;
}

Interval refineReturnTime(CrossingBracket& bracket, const Section& section,
                          const VectorField& F, const SolverConfig& cfg,
                          const PoincareOptions& opts) {
    LohnerSolver solver(F, cfg);
    for (int it = 0; it < opts.maxNewtonIterations; ++it) {
        double before = bracket.window.diam();
        Interval absolute = newtonReturnTimeStep(bracket, section, solver);
        Interval refined = absolute - bracket.originTime;

        // Shift the bracket origin to the refined lower bound and recompute
        // the tube over the shrunken window.
        double shift = refined.lo();
        if (shift > 0) {
            LohnerSolver::Flow fwd = solver.integrateTo(RepresentableSet(bracket.X1), shift);
            bracket.X1 = fwd.end;
            bracket.originTime = bracket.originTime + Interval(shift);
            refined = refined - Interval(shift);
        }
        bracket.window = Interval::raw(0.0, std::max(refined.hi(), 0.0));
        LohnerSolver::Flow span =
            solver.integrateTo(RepresentableSet(bracket.X1), bracket.window.hi());
        bracket.tube = span.tube;
        bracket.after = span.end;
        bracket.afterTime = bracket.originTime + Interval(bracket.window.hi());
        bracket.flowForm = section.flowForm(F, tubeHull(bracket.tube, bracket.window.hi()));

        double after = bracket.window.diam();
        if (before > 0 && (before - after) / before < opts.newtonImprovement) break;
    }
    return bracket.originTime + bracket.window;
}

PoincareEnclosure computePoincareMap(const CrossingBracket& bracket, const Section& section,
                                     const VectorField& F, const CoordinateFrame& frame,
                                     const SolverConfig& cfg) {
    if (!bracket.transversal) throw TangencyRisk("computePoincareMap: bracket not transversal");
    if (frame.A.cols() != F.dim())
        throw DomainError("computePoincareMap: frame dimension mismatch");
    LohnerSolver solver(F, cfg);

    const Interval R = bracket.window;
    IntervalVector e = tubeHull(bracket.tube, R.hi());
    const double t0 = R.mid();
    Interval dt = R - Interval(t0);

    LohnerSolver::Flow mid = solver.integrateTo(RepresentableSet(bracket.X1), t0);
    RepresentableSet X0(mid.end);

    PoincareEnclosure out;
    out.y0 = affineTransform(X0, frame.A, frame.y);

    AffineFieldMap af(frame.A, F);
    IntervalVector afX0 = eval(X0, af);
    out.yFlow = dt * afX0;

    IntervalVector fe = F(e);
    IntervalVector curvature = matVec(F.jacobianAt(e), fe);
    Interval halfDt2 = Interval(0.5) * sqr(dt);
    out.dy = halfDt2 * matVec(frame.A, curvature);

    IntervalVector sum = out.y0 + out.yFlow + out.dy;
    IntervalVector hullForm = matVec(frame.A, e - frame.y);
    out.z = intersect(sum, hullForm);
    out.returnTime = bracket.originTime + R;

    if (frame.sectionAdapted && section.isAffine()) {
        IntervalVector proj = out.z;
        proj[0] = Interval(0.0);
        out.sectionProjection = proj;
    }
    return out;
}

PoincareEnclosure poincareReturn(const VectorField& F, const RepresentableSet& X,
                                 const Section& section, const CoordinateFrame& frame,
                                 int crossings, const SolverConfig& cfg,
                                 const PoincareOptions& opts) {
    if (crossings < 1) throw DomainError("poincareReturn: crossings must be >= 1");
    LohnerSolver solver(F, cfg);
    Doubleton cur = toDoubleton(X);
    Interval curTime(0.0);

    Interval launch = section.flowForm(F, enclose(cur));
    if (launch.contains(0.0))
        throw TangencyRisk("poincareReturn: launch direction not transversal");
    int launchDir = launch.lo() > 0 ? 1 : -1;

    CrossingBracket bracket;
    for (int k = 0; k < crossings; ++k) {
        // The final crossing matches the launch direction, earlier ones
        // alternate (the orbit re-crosses the section in opposite senses).
        int dir = ((crossings - 1 - k) % 2 == 0) ? launchDir : -launchDir;
        bracket = detectCrossingFrom(F, cur, curTime, section, dir, solver, opts);
        if (k + 1 < crossings) {
            cur = bracket.after;
            curTime = bracket.afterTime;
        }
    }
    refineReturnTime(bracket, section, F, cfg, opts);
    return computePoincareMap(bracket, section, F, frame, cfg);
}

IntervalVector projectToSection(const PoincareEnclosure& enc, const CoordinateFrame& frame,
                                const Section& section) {
    if (!section.isAffine())
        throw UnsupportedSection("projectToSection: general sections not supported");
    if (!frame.sectionAdapted)
        throw UnsupportedSection("projectToSection: frame not anchored on the section");
    IntervalVector proj = enc.z;
    proj[0] = Interval(0.0);
    return proj;
}

}  // namespace poincare
