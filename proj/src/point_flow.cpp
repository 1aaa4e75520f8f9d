#include "poincare/point_flow.hpp"

#include <algorithm>
#include <cmath>

namespace poincare {

namespace {

double predictStep(const std::vector<DJet>& jets, int order, const PointFlowConfig& cfg,
                   double scale) {
    double h = cfg.maxStep;
    for (int k : {order - 1, order}) {
        double mag = 0;
        for (const auto& j : jets) mag = std::max(mag, std::fabs(j[k]));
        if (mag > 0) h = std::min(h, std::pow(cfg.tolerance * scale / mag, 1.0 / k));
    }
    return std::clamp(h, cfg.minStep, cfg.maxStep);
}

double hornerD(const DJet& j, double t, int order) {
    double s = j[order];
    for (int k = order - 1; k >= 0; --k) s = s * t + j[k];
    return s;
}

struct Stepper {
    const VectorField& F;
    const PointFlowConfig& cfg;
    Vector x;
    Matrix V;
    bool withV;

    // One Taylor step of size at most hMax; returns the step actually taken.
    double step(double hMax) {
        const int n = F.dim();
        std::vector<double> seed(x.data(), x.data() + n);
        auto jets = detail::jetSolution(F, seed, cfg.order);
        double h = predictStep(jets, cfg.order, cfg, std::max(1.0, x.lpNorm<Eigen::Infinity>()));
        if (hMax > 0) h = std::min(h, hMax);
        for (int i = 0; i < n; ++i) x[i] = hornerD(jets[i], h, cfg.order);
        if (withV) {
            std::vector<double> v0(n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) v0[i * n + j] = V(i, j);
            auto Vj = detail::jetVariational(F, jets, v0, cfg.order);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = Vj[cfg.order][i * n + j];
                    for (int k = cfg.order - 1; k >= 0; --k) s = s * h + Vj[k][i * n + j];
                    V(i, j) = s;
                }
        }
        if (!x.allFinite()) throw Divergence("point integration overflow");
        return h;
    }

    void advanceTo(double target, double t0) {
        double t = t0;
        while (t < target) {
            double h = step(target - t);
            t += h;
            if (h < cfg.minStep * 0.5) throw Divergence("point integration stalled");
        }
    }
};

}  // namespace

Vector pointIntegrate(const VectorField& F, const Vector& x0, double T,
                      const PointFlowConfig& cfg) {
    if (T < 0) throw DomainError("pointIntegrate: negative time");
    Stepper s{F, cfg, x0, Matrix(), false};
    s.advanceTo(T, 0.0);
    return s.x;
}

Matrix monodromy(const VectorField& F, const Vector& x0, double T, const PointFlowConfig& cfg) {
    if (T < 0) throw DomainError("monodromy: negative time");
    const int n = F.dim();
    Stepper s{F, cfg, x0, Matrix::Identity(n, n), true};
    s.advanceTo(T, 0.0);
    return s.V;
}

void sampleFlow(const VectorField& F, const Vector& x0, const std::vector<double>& times,
                const std::function<void(int, const Vector&, const Matrix&)>& visit,
                bool withVariational, const PointFlowConfig& cfg) {
    const int n = F.dim();
    Stepper s{F, cfg, x0, Matrix::Identity(n, n), withVariational};
    double t = 0;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t) throw DomainError("sampleFlow: times must be increasing");
        while (t < times[i]) t += s.step(times[i] - t);
        visit(static_cast<int>(i), s.x, s.V);
    }
}

std::vector<CrossingEvent> scanSectionCrossings(const VectorField& F, const Vector& x0,
                                                const Vector& w, double offset, double tMax,
                                                const PointFlowConfig& cfg) {
    auto alpha = [&](const Vector& p) { return w.dot(p) - offset; };
    std::vector<CrossingEvent> events;
    Stepper s{F, cfg, x0, Matrix(), false};
    double t = 0;
    double prevT = 0;
    Vector prevX = x0;
    double prevA = alpha(x0);
    while (t < tMax) {
        double h = s.step(tMax - t);
        t += h;
        double a = alpha(s.x);
        if (prevA != 0 && a != 0 && ((prevA < 0) != (a < 0))) {
            // Secant refinement inside [prevT, t] on a fresh trajectory from prevX.
            double lo = 0, hi = t - prevT, flo = prevA, fhi = a;
            for (int it = 0; it < 60 && hi - lo > 1e-14 * std::max(1.0, t); ++it) {
                double m = lo + (hi - lo) * (flo / (flo - fhi));
                m = std::clamp(m, lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo));
                double fm = alpha(pointIntegrate(F, prevX, m, cfg));
                if ((fm < 0) == (flo < 0)) {
                    lo = m;
                    flo = fm;
                } else {
                    hi = m;
                    fhi = fm;
                }
            }
            double tc = prevT + 0.5 * (lo + hi);
            Vector xc = pointIntegrate(F, prevX, 0.5 * (lo + hi), cfg);
            double slope = w.dot(F(xc));
            events.push_back({tc, slope > 0 ? 1 : -1});
        }
        prevT = t;
        prevX = s.x;
        prevA = a;
    }
    return events;
}

PeriodicOrbit refinePeriodicOrbit(const VectorField& F, const Vector& u0, int sectionCoord,
                                  double T0, int sweeps, const PointFlowConfig& cfg) {
    const int n = F.dim();
    PeriodicOrbit orbit;
    orbit.u = u0;
    orbit.period = T0;
    for (int it = 0; it < sweeps; ++it) {
        Stepper s{F, cfg, orbit.u, Matrix::Identity(n, n), true};
        s.advanceTo(orbit.period, 0.0);
        Vector G = s.x - orbit.u;
        orbit.monodromy = s.V;
        orbit.residual = G.lpNorm<Eigen::Infinity>();
        if (orbit.residual < 1e-14 * std::max(1.0, orbit.u.lpNorm<Eigen::Infinity>())) break;

        // Unknowns: all coordinates except the pinned section one, plus T.
        Matrix J(n, n);
        int col = 0;
        for (int j = 0; j < n; ++j) {
            if (j == sectionCoord) continue;
            J.col(col++) = (s.V - Matrix::Identity(n, n)).col(j);
        }
        J.col(n - 1) = F(s.x);
        Eigen::FullPivLU<Matrix> lu(J);
        if (!lu.isInvertible()) break;
        Vector step = lu.solve(-G);
        col = 0;
        for (int j = 0; j < n; ++j) {
            if (j == sectionCoord) continue;
            orbit.u[j] += step[col++];
        }
        orbit.period += step[n - 1];
    }
    return orbit;
}

}  // namespace poincare
