#include "poincare/rk_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace poincare {

namespace {

// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct RkStepper {
    const VectorField& F;
    const RkOptions& opts;
    Vector x;
    double t = 0;
    double h;

    explicit RkStepper(const VectorField& F_, const Vector& x0, const RkOptions& o)
        : F(F_), opts(o), x(x0), h(o.initialStep) {}

    // One accepted adaptive step, not exceeding hMax; returns the step taken.
    double step(double hMax) {
        for (;;) {
            double hTry = std::min({h, hMax, opts.maxStep});
            Vector k1 = F(x);
            Vector k2 = F(x + hTry * (a21 * k1));
            Vector k3 = F(x + hTry * (a31 * k1 + a32 * k2));
            Vector k4 = F(x + hTry * (a41 * k1 + a42 * k2 + a43 * k3));
            Vector k5 = F(x + hTry * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            Vector k6 = F(x + hTry * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            Vector x5 = x + hTry * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            Vector k7 = F(x5);
            Vector err = hTry * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double scale = 0;
            for (int i = 0; i < x.size(); ++i) {
                double s = opts.absTol + opts.relTol * std::max(std::fabs(x[i]), std::fabs(x5[i]));
                scale = std::max(scale, std::fabs(err[i]) / s);
            }
            if (scale <= 1.0 || hTry <= 1e-14) {
                x = x5;
                t += hTry;
                double grow = scale > 0 ? 0.9 * std::pow(scale, -0.2) : 5.0;
                h = hTry * std::clamp(grow, 0.2, 5.0);
                if (!x.allFinite()) throw Divergence("rk oracle overflow");
                return hTry;
            }
            h = hTry * std::max(0.1, 0.9 * std::pow(scale, -0.2));
        }
    }

    void advanceTo(double target) {
        while (t < target) step(target - t);
    }
};

}  // namespace

Vector rkIntegrate(const VectorField& F, const Vector& x0, double T, const RkOptions& opts) {
    if (T < 0) throw DomainError("rkIntegrate: negative time");
    RkStepper s(F, x0, opts);
    s.advanceTo(T);
    return s.x;
}

RkReturn rkPoincare(const VectorField& F, const Vector& x0, const Section& section,
                    int crossings, double tMax, const RkOptions& opts) {
    if (crossings < 1) throw DomainError("rkPoincare: crossings must be >= 1");
    double launch = section.flowForm(F, x0);
    int launchDir = launch > 0 ? 1 : -1;
    int remaining = crossings;

    RkStepper s(F, x0, opts);
    double prevT = 0;
    Vector prevX = x0;
    double prevA = section.value(x0);
    double guard = 0;  // min flight before crossings are considered

    while (s.t < tMax) {
        double h = s.step(tMax - s.t);
        if (guard == 0) guard = 10 * h;
        double a = section.value(s.x);
        if (s.t > guard && prevA != 0 && a != 0 && (prevA < 0) != (a < 0)) {
            int dir = ((crossings - remaining) % 2 == (crossings - 1) % 2) ? launchDir
                                                                           : -launchDir;
            // Actual crossing direction from the sign transition.
            int obsDir = a > prevA ? 1 : -1;
            if (obsDir == dir) {
                // Secant on fresh short integrations from prevX.
                double lo = 0, hi = s.t - prevT, flo = prevA, fhi = a;
                for (int it = 0; it < 80 && (hi - lo) > 1e-15 * std::max(1.0, s.t); ++it) {
                    double m = lo + (hi - lo) * (flo / (flo - fhi));
                    m = std::clamp(m, lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo));
                    double fm = section.value(rkIntegrate(F, prevX, m, opts));
                    if ((fm < 0) == (flo < 0)) {
                        lo = m;
                        flo = fm;
                    } else {
                        hi = m;
                        fhi = fm;
                    }
                }
                double tc = prevT + 0.5 * (lo + hi);
                if (--remaining == 0)
                    return {tc, rkIntegrate(F, prevX, 0.5 * (lo + hi), opts)};
            }
        }
        prevT = s.t;
        prevX = s.x;
        prevA = a;
    }
    throw NoCrossing("rkPoincare: no return before tMax");
}

}  // namespace poincare
