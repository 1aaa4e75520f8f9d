#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "poincare/errors.hpp"

namespace poincare {

// Directed-rounding helpers.  All arithmetic runs in the default
// round-to-nearest mode; endpoints are corrected afterwards using the exact
// rounding error recovered with two-sum / fma.  No global FPU state is
// touched, so intervals are safe to use from concurrent threads.
namespace rnd {

inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

// a + b rounded towards -inf / +inf.  Uses Knuth's two-sum: the rounding
// error of fl(a+b) is exactly representable, so we only step an ulp when the
// result is actually inexact.
inline double add_down(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return s > 0 ? std::numeric_limits<double>::max() : s;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return s < 0 ? std::numeric_limits<double>::lowest() : s;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// a * b rounded down/up; fma recovers the exact product error.
inline double mul_down(double a, double b) {
    double p = a * b;
    if (std::isnan(p)) return -std::numeric_limits<double>::infinity();  // 0 * inf
    if (!std::isfinite(p)) return p > 0 ? std::numeric_limits<double>::max() : p;
    double err = std::fma(a, b, -p);
    return err < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
    double p = a * b;
    if (std::isnan(p)) return std::numeric_limits<double>::infinity();
    if (!std::isfinite(p)) return p < 0 ? std::numeric_limits<double>::lowest() : p;
    double err = std::fma(a, b, -p);
    return err > 0 ? next_up(p) : p;
}

// a / b rounded down/up (b != 0).  sign(q - a/b) = sign(q*b - a) * sign(b).
inline double div_down(double a, double b) {
    double q = a / b;
    if (std::isnan(q)) return -std::numeric_limits<double>::infinity();
    if (!std::isfinite(q)) return q > 0 ? std::numeric_limits<double>::max() : q;
    double r = std::fma(q, b, -a);
    bool too_big = (r > 0) == (b > 0) && r != 0;
    return too_big ? next_down(q) : q;
}

inline double div_up(double a, double b) {
    double q = a / b;
    if (std::isnan(q)) return std::numeric_limits<double>::infinity();
    if (!std::isfinite(q)) return q < 0 ? std::numeric_limits<double>::lowest() : q;
    double r = std::fma(q, b, -a);
    bool too_small = (r < 0) == (b > 0) && r != 0;
    return too_small ? next_up(q) : q;
}

inline double sqrt_down(double x) {
    double s = std::sqrt(x);
    double r = std::fma(s, s, -x);
    return r > 0 ? next_down(s) : s;
}

inline double sqrt_up(double x) {
    double s = std::sqrt(x);
    double r = std::fma(s, s, -x);
    return r < 0 ? next_up(s) : s;
}

}  // namespace rnd

// A closed interval [lo, hi] of binary64 numbers.  Every operation returns
// an enclosure of the exact real-arithmetic result set; endpoints are the
// tightest representable or at most one ulp beyond.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0) {}
    Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: implicit by design
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw DomainError("Interval: invalid endpoints");
    }

    static Interval entire() {
        return Interval(-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity());
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    // Midpoint is guaranteed to lie inside the interval.
    double mid() const {
        if (lo_ == hi_) return lo_;
        double m = 0.5 * (lo_ + hi_);
        if (!std::isfinite(m)) m = 0.5 * lo_ + 0.5 * hi_;
        return std::clamp(m, lo_, hi_);
    }

    double diam() const { return rnd::sub_up(hi_, lo_); }
    double rad() const { return 0.5 * diam(); }
    // mag = max |x|, mig = min |x| over the interval.
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    double mig() const {
        return contains(0.0) ? 0.0 : std::min(std::fabs(lo_), std::fabs(hi_));
    }

    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool strictlyContains(const Interval& o) const { return lo_ < o.lo_ && o.hi_ < hi_; }
    bool isPoint() const { return lo_ == hi_; }
    bool isFinite() const { return std::isfinite(lo_) && std::isfinite(hi_); }

    Interval operator-() const { return raw(-hi_, -lo_); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return raw(rnd::add_down(a.lo_, b.lo_), rnd::add_up(a.hi_, b.hi_));
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return raw(rnd::sub_down(a.lo_, b.hi_), rnd::sub_up(a.hi_, b.lo_));
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        double lo = std::min(std::min(rnd::mul_down(a.lo_, b.lo_), rnd::mul_down(a.lo_, b.hi_)),
                             std::min(rnd::mul_down(a.hi_, b.lo_), rnd::mul_down(a.hi_, b.hi_)));
        double hi = std::max(std::max(rnd::mul_up(a.lo_, b.lo_), rnd::mul_up(a.lo_, b.hi_)),
                             std::max(rnd::mul_up(a.hi_, b.lo_), rnd::mul_up(a.hi_, b.hi_)));
        return raw(lo, hi);
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains(0.0)) throw DomainError("Interval division by interval containing 0");
        double lo = std::min(std::min(rnd::div_down(a.lo_, b.lo_), rnd::div_down(a.lo_, b.hi_)),
                             std::min(rnd::div_down(a.hi_, b.lo_), rnd::div_down(a.hi_, b.hi_)));
        double hi = std::max(std::max(rnd::div_up(a.lo_, b.lo_), rnd::div_up(a.lo_, b.hi_)),
                             std::max(rnd::div_up(a.hi_, b.lo_), rnd::div_up(a.hi_, b.hi_)));
        return raw(lo, hi);
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    bool operator==(const Interval& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }
    bool operator!=(const Interval& o) const { return !(*this == o); }

    // Construct without validation; internal fast path.
    static Interval raw(double lo, double hi) {
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }

private:
    double lo_, hi_;
};

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval::raw(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

inline Interval intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo(), b.lo());
    double hi = std::min(a.hi(), b.hi());
    if (lo > hi) throw EmptyIntersection("Interval intersection is empty");
    return Interval::raw(lo, hi);
}

inline bool disjoint(const Interval& a, const Interval& b) {
    return a.hi() < b.lo() || b.hi() < a.lo();
}

// Tight square: never produces negative lower bounds.
inline Interval sqr(const Interval& a) {
    if (a.lo() >= 0) return Interval::raw(rnd::mul_down(a.lo(), a.lo()), rnd::mul_up(a.hi(), a.hi()));
    if (a.hi() <= 0) return Interval::raw(rnd::mul_down(a.hi(), a.hi()), rnd::mul_up(a.lo(), a.lo()));
    double m = a.mag();
    return Interval::raw(0.0, rnd::mul_up(m, m));
}

inline Interval sqrt(const Interval& a) {
    if (a.lo() < 0) throw DomainError("sqrt of interval with negative part");
    return Interval::raw(rnd::sqrt_down(a.lo()), rnd::sqrt_up(a.hi()));
}

// std::exp is faithfully rounded on this platform; two ulps of slack cover it.
inline Interval exp(const Interval& a) {
    double lo = rnd::next_down(rnd::next_down(std::exp(a.lo())));
    double hi = rnd::next_up(rnd::next_up(std::exp(a.hi())));
    return Interval::raw(std::max(lo, 0.0), hi);
}

inline Interval abs(const Interval& a) {
    return Interval::raw(a.mig(), a.mag());
}

// x^n for integer n >= 0 (even powers stay tight through sqr).
inline Interval powi(const Interval& a, int n) {
    if (n < 0) throw DomainError("powi: negative exponent");
    if (n == 0) return Interval(1.0);
    Interval result(1.0);
    Interval base = a;
    int k = n;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k) base = sqr(base);
    }
    return result;
}

inline std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << "[" << x.lo() << ", " << x.hi() << "]";
}

}  // namespace poincare
