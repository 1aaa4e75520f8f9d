#include "poincare/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace poincare {

namespace {

IntervalVector inflate(const IntervalVector& box, double factor, double absFloor) {
    IntervalVector r(box.size());
    for (int i = 0; i < box.size(); ++i) {
        double m = box[i].mid();
        double rad = std::max(box[i].rad() * factor, absFloor);
        r[i] = Interval(m) + Interval::raw(-rad, rad);
    }
    return r;
}

// Interval Horner evaluation of per-component jets at time t.
IntervalVector hornerAt(const std::vector<IJet>& jets, const Interval& t, int order) {
    const int n = static_cast<int>(jets.size());
    IntervalVector r(n);
    for (int i = 0; i < n; ++i) {
        Interval s = jets[i][order];
        for (int k = order - 1; k >= 0; --k) s = s * t + jets[i][k];
        r[i] = s;
    }
    return r;
}

IntervalMatrix hornerAt(const std::vector<std::vector<Interval>>& mats, const Interval& t,
                        int order, int n) {
    IntervalMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Interval s = mats[order][i * n + j];
            for (int k = order - 1; k >= 0; --k) s = s * t + mats[k][i * n + j];
            r(i, j) = s;
        }
    return r;
}

std::vector<Interval> toScalarVec(const IntervalVector& v) {
    std::vector<Interval> r(v.size());
    for (int i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

}  // namespace

Doubleton toDoubleton(const RepresentableSet& X) {
    if (const auto* b = std::get_if<BoxSet>(&X)) return Doubleton::fromBox(b->box);
    if (const auto* d = std::get_if<Doubleton>(&X)) return *d;
    const auto& t = std::get<Tripleton>(X);
    // q is intersected with the image of the second factor under Q^{-1}:
    // for p = x + C a + Q b = x + C a' + B c we get
    // b in Q^{-1}C (r0 - r0) + Q^{-1}B r.
    IntervalMatrix iQ = verifiedInverse(t.Q);
    IntervalVector r0sym = t.r0 - t.r0;
    IntervalVector bound = matVec(matMul(iQ, t.C), r0sym) + matVec(matMul(iQ, t.B), t.r);
    Doubleton d = t.primary();
    d.q = intersect(t.q, bound);
    return d;
}

LohnerSolver::LohnerSolver(const VectorField& F, SolverConfig cfg) : F_(F), cfg_(cfg) {
    if (cfg_.order < 2) throw DomainError("SolverConfig: order must be >= 2");
    if (!(0 < cfg_.minStep && cfg_.minStep <= cfg_.maxStep))
        throw DomainError("SolverConfig: invalid step bounds");
}

double LohnerSolver::predictStep(const std::vector<IJet>& jets, double scale) const {
    const int p = cfg_.order;
    double h = cfg_.maxStep;
    for (int k : {p - 1, p}) {
        double mag = 0;
        for (const auto& j : jets) mag = std::max(mag, j[k].mag());
        if (mag > 0) {
            double hk = std::pow(cfg_.tolerance * scale / mag, 1.0 / k);
            h = std::min(h, hk);
        }
    }
    return std::clamp(h, cfg_.minStep, cfg_.maxStep);
}

IntervalVector LohnerSolver::aprioriEnclosure(const IntervalVector& X, double h,
                                              bool twoSided) const {
    if (!(h > 0)) throw DomainError("aprioriEnclosure: h must be positive");
    const Interval tRange = twoSided ? Interval::raw(-h, h) : Interval::raw(0.0, h);
    double floor = 1e-15 * std::max(1.0, X.norm());
    IntervalVector E = inflate(X + tRange * F_(X), 1.1, floor);
    for (int attempt = 0; attempt < cfg_.maxPicardRetries; ++attempt) {
        IntervalVector picard = X + tRange * F_(E);
        if (E.contains(picard)) return picard;
        E = inflate(hull(E, picard), cfg_.inflation, floor);
    }
    throw StepRejected("aprioriEnclosure: Picard validation failed");
}

StepResult LohnerSolver::oneStep(const Doubleton& X, double hMax) const {
    const int n = F_.dim();
    const int p = cfg_.order;
    IntervalVector Xbox = enclose(X);
    double scale = std::max(1.0, Xbox.norm());

    // Taylor coefficients at the centre (for the new centre) and over the
    // hull (for the mean-value Jacobian and the tube polynomial).
    auto ptJets = detail::jetSolution(F_, toScalarVec(IntervalVector(X.x)), p);
    auto boxJets = detail::jetSolution(F_, toScalarVec(Xbox), p);

    double h = predictStep(ptJets, scale);
    if (hMax > 0) h = std::min(h, hMax);

    IntervalVector E;
    int rejections = 0;
    for (;;) {
        try {
            E = aprioriEnclosure(Xbox, h);
            break;
        } catch (const StepRejected&) {
            if (++rejections > cfg_.maxStepRejections || h / 2 < cfg_.minStep)
                throw Divergence("oneStep: step size underflow during validation");
            h /= 2;
        }
    }
    const Interval ih(h);
    const Interval window = Interval::raw(0.0, h);

    // Lagrange remainders: order p+1 coefficients over the a-priori
    // enclosure, for both the solution and the variational flow.
    auto remJets = detail::jetSolution(F_, toScalarVec(E), p + 1);
    Interval hp1 = powi(ih, p + 1);
    IntervalVector rem(n);
    for (int i = 0; i < n; ++i) rem[i] = remJets[i][p + 1] * hp1;

    // Variational coefficients over the hull; remainder needs an enclosure W
    // of D phi(t, .) for t in [0,h], obtained from a Gronwall bound.
    std::vector<Interval> id(n * n, Interval(0.0));
    for (int i = 0; i < n; ++i) id[i * n + i] = Interval(1.0);
    auto Vbox = detail::jetVariational(F_, boxJets, id, p);

    double mu = F_.jacobianAt(E).norm();
    double beta = (exp(Interval(mu) * ih) - Interval(1.0)).hi();
    std::vector<Interval> W(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            W[i * n + j] = Interval(i == j ? 1.0 : 0.0) + Interval::raw(-beta, beta);
    auto Vrem = detail::jetVariational(F_, remJets, W, p + 1);

    IntervalVector centre = hornerAt(ptJets, ih, p) + rem;
    IntervalMatrix J = hornerAt(Vbox, ih, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) J(i, j) += Vrem[p + 1][i * n + j] * hp1;

    // Tube: polynomial range over [0,h] plus remainder, tightened by E.
    IntervalVector tube(n);
    {
        Interval wp1 = powi(window, p + 1);
        IntervalVector poly = hornerAt(boxJets, window, p);
        for (int i = 0; i < n; ++i)
            tube[i] = intersect(poly[i] + remJets[i][p + 1] * wp1, E[i]);
    }

    // Doubleton update (Lohner QR): centre re-centred, the initial-error
    // factor keeps its r0, spill and local errors go into the q part through
    // an orthogonalized frame.
    Doubleton out;
    out.x = centre.mid();
    IntervalVector delta = centre - out.x;

    IntervalMatrix JC = matMul(J, X.C);
    out.C = JC.mid();
    IntervalVector spill = matVec(JC - IntervalMatrix(out.C), X.r0);
    out.r0 = X.r0;

    IntervalMatrix JQ = matMul(J, X.Q);
    Matrix M0 = JQ.mid();

    // Column sort by contribution size before QR (wrapping control).
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Vector weight(n);
    for (int j = 0; j < n; ++j)
        weight[j] = M0.col(j).norm() * (X.q[j].diam() + 1e-300);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return weight[a] > weight[b]; });
    Matrix Msorted(n, n);
    for (int j = 0; j < n; ++j) Msorted.col(j) = M0.col(perm[j]);
    Eigen::HouseholderQR<Matrix> qr(Msorted);
    out.Q = qr.householderQ();
    IntervalMatrix invQ = verifiedInverse(out.Q);

    IntervalVector local = delta + spill;
    out.q = matVec(matMul(invQ, JQ), X.q) + matVec(invQ, local);

    StepResult res;
    res.next = out;
    res.trajectoryEnclosure = hull(tube, enclose(out));
    res.stepUsed = h;
    return res;
}

LohnerSolver::Flow LohnerSolver::integrateTo(const RepresentableSet& X, double t) const {
    if (t < 0) throw DomainError("integrateTo: negative time");
    Flow flow;
    flow.end = toDoubleton(X);
    flow.elapsed = Interval(0.0);
    if (t == 0) return flow;

    ExactSum elapsed;
    double remaining = t;
    while (remaining > 0) {
        StepResult step = oneStep(flow.end, remaining);
        Interval t0 = elapsed.enclosure();
        elapsed.add(step.stepUsed);
        Interval t1 = elapsed.enclosure();
        flow.tube.push_back({hull(t0, t1), step.trajectoryEnclosure});
        flow.end = step.next;
        remaining = std::max(0.0, (t - elapsed.approx()));
        if (step.stepUsed >= remaining && remaining < 1e-14 * std::max(1.0, t)) break;
    }

    // Close the ulp-size gap between the exact accumulated time and t, so
    // the end set encloses phi(t, .) for the requested t itself.
    flow.elapsed = elapsed.enclosure();
    Interval gap = Interval(t) - flow.elapsed;
    if (gap.lo() != 0 || gap.hi() != 0) {
        double gm = std::max(std::fabs(gap.lo()), std::fabs(gap.hi()));
        gm = std::max(gm, 1e-300);
        IntervalVector Egap = aprioriEnclosure(enclose(flow.end), gm, true);
        IntervalVector corr = gap * F_(Egap);
        IntervalMatrix invQ = verifiedInverse(flow.end.Q);
        flow.end.q = flow.end.q + matVec(invQ, corr);
        if (gap.hi() > 0)
            flow.tube.push_back({hull(flow.elapsed, Interval(t)), Egap});
        flow.elapsed = Interval(t);
    }
    return flow;
}

IntervalVector LohnerSolver::evalOverTimeRange(const RepresentableSet& X, double tau) const {
    if (tau < 0) throw DomainError("evalOverTimeRange: negative time");
    if (tau == 0) return enclose(X);
    Flow flow = integrateTo(X, tau);
    IntervalVector acc = flow.tube.front().box;
    for (size_t i = 1; i < flow.tube.size(); ++i) acc = hull(acc, flow.tube[i].box);
    return acc;
}

}  // namespace poincare
