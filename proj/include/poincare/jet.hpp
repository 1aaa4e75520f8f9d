#pragma once

#include <vector>

#include "poincare/interval.hpp"

namespace poincare {

// Truncated Taylor series sum_k c[k] t^k with scalar coefficients T
// (double for fast non-rigorous work, Interval for enclosures).
// Arithmetic truncates at the fixed length of the left operand.
template <class T>
class Jet {
public:
    Jet() = default;
    explicit Jet(int len) : c_(len, T(0.0)) {}
    static Jet constant(double v, int len) {
        Jet j(len);
        j.c_[0] = T(v);
        return j;
    }

    int length() const { return static_cast<int>(c_.size()); }
    T& operator[](int k) { return c_[k]; }
    const T& operator[](int k) const { return c_[k]; }

    Jet operator-() const {
        Jet r(length());
        for (int k = 0; k < length(); ++k) r.c_[k] = -c_[k];
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r(a.length());
        for (int k = 0; k < a.length(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r(a.length());
        for (int k = 0; k < a.length(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    // Truncated Cauchy product.
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.length());
        for (int k = 0; k < a.length(); ++k) {
            T s(0.0);
            for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
            r.c_[k] = s;
        }
        return r;
    }

    friend Jet operator+(const Jet& a, double s) {
        Jet r = a;
        r.c_[0] += T(s);
        return r;
    }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(const Jet& a, double s) {
        Jet r(a.length());
        for (int k = 0; k < a.length(); ++k) r.c_[k] = a.c_[k] * T(s);
        return r;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }

    friend Jet operator*(const Jet& a, const T& s) {
        Jet r(a.length());
        for (int k = 0; k < a.length(); ++k) r.c_[k] = a.c_[k] * s;
        return r;
    }
    friend Jet operator*(const T& s, const Jet& a) { return a * s; }

    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    // Horner evaluation at t.
    T eval(const T& t) const {
        T r(0.0);
        for (int k = length() - 1; k >= 0; --k) r = r * t + c_[k];
        return r;
    }

private:
    std::vector<T> c_;
};

using DJet = Jet<double>;
using IJet = Jet<Interval>;

}  // namespace poincare
