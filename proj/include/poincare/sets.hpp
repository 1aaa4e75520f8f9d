#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "poincare/interval_linalg.hpp"

namespace poincare {

// A smooth map g: R^n -> R^m with an interval realisation and an interval
// Jacobian, as required by representation-aware set evaluation.
class SmoothMap {
public:
    virtual ~SmoothMap() = default;
    virtual int domainDim() const = 0;
    virtual int rangeDim() const = 0;
    virtual IntervalVector value(const IntervalVector& x) const = 0;
    virtual IntervalMatrix jacobian(const IntervalVector& x) const = 0;
    IntervalVector valueAt(const Vector& x) const { return value(IntervalVector(x)); }
};

// Convenience wrapper for ad-hoc maps (tests, simple adapters).
class FunctionMap : public SmoothMap {
public:
    using ValueFn = std::function<IntervalVector(const IntervalVector&)>;
    using JacFn = std::function<IntervalMatrix(const IntervalVector&)>;
    FunctionMap(int n, int m, ValueFn v, JacFn j)
        : n_(n), m_(m), value_(std::move(v)), jac_(std::move(j)) {}
    int domainDim() const override { return n_; }
    int rangeDim() const override { return m_; }
    IntervalVector value(const IntervalVector& x) const override { return value_(x); }
    IntervalMatrix jacobian(const IntervalVector& x) const override { return jac_(x); }

private:
    int n_, m_;
    ValueFn value_;
    JacFn jac_;
};

// Plain interval box.
struct BoxSet {
    IntervalVector box;
    int dim() const { return box.size(); }
};

// The set { x + C r0 + Q q : r0 in r0Box, q in qBox }.  Both interval factors
// contain zero, so x itself is a member; Q is kept close to orthogonal by the
// solver and must be invertible.
struct Doubleton {
    Vector x;
    Matrix C;
    IntervalVector r0;
    Matrix Q;
    IntervalVector q;

    int dim() const { return static_cast<int>(x.size()); }

    static Doubleton fromBox(const IntervalVector& box) {
        const int n = box.size();
        Doubleton d;
        d.x = box.mid();
        d.C = Matrix::Identity(n, n);
        d.r0 = box - d.x;
        d.Q = Matrix::Identity(n, n);
        d.q = IntervalVector(Vector::Zero(n));
        return d;
    }
    static Doubleton point(const Vector& p) {
        return fromBox(IntervalVector(p));
    }
    // x + C r0 with clean accumulated-error part.
    static Doubleton affine(const Vector& x, const Matrix& C, const IntervalVector& r0) {
        const int n = static_cast<int>(x.size());
        Doubleton d;
        d.x = x;
        d.C = C;
        d.r0 = r0;
        d.Q = Matrix::Identity(n, n);
        d.q = IntervalVector(Vector::Zero(n));
        return d;
    }
};

// Intersection of two doubletons sharing the (x, C, r0) part.
struct Tripleton {
    Vector x;
    Matrix C;
    IntervalVector r0;
    Matrix Q;
    IntervalVector q;
    Matrix B;
    IntervalVector r;

    int dim() const { return static_cast<int>(x.size()); }

    Doubleton primary() const { return Doubleton{x, C, r0, Q, q}; }
    Doubleton secondary() const { return Doubleton{x, C, r0, B, r}; }
};

using RepresentableSet = std::variant<BoxSet, Doubleton, Tripleton>;

inline int dimOf(const RepresentableSet& X) {
    return std::visit([](const auto& s) { return s.dim(); }, X);
}

// Interval hull of the represented point set.
inline IntervalVector enclose(const Doubleton& d) {
    return IntervalVector(d.x) + matVec(d.C, d.r0) + matVec(d.Q, d.q);
}

inline IntervalVector enclose(const RepresentableSet& X) {
    if (const auto* b = std::get_if<BoxSet>(&X)) return b->box;
    if (const auto* d = std::get_if<Doubleton>(&X)) return enclose(*d);
    const auto& t = std::get<Tripleton>(X);
    return intersect(enclose(t.primary()), enclose(t.secondary()));
}

namespace detail {

// Mean-value form for a doubleton factor: <g(x) + (M C) r0 + (M Q) q>
// with M an enclosure of Dg over the hull of the set.
inline IntervalVector meanValueForm(const SmoothMap& g, const Doubleton& d,
                                    const IntervalMatrix& M) {
    return g.valueAt(d.x) + matVec(matMul(M, d.C), d.r0) + matVec(matMul(M, d.Q), d.q);
}

}  // namespace detail

// Enclosure of g(X) taking the representation of X into account: the direct
// interval evaluation over the hull is intersected with the mean-value form
// of every doubleton factor.
inline IntervalVector eval(const RepresentableSet& X, const SmoothMap& g) {
    IntervalVector hullX = enclose(X);
    IntervalVector direct = g.value(hullX);
    if (std::holds_alternative<BoxSet>(X)) {
        const Doubleton d = Doubleton::fromBox(std::get<BoxSet>(X).box);
        IntervalMatrix M = g.jacobian(hullX);
        return intersect(direct, detail::meanValueForm(g, d, M));
    }
    IntervalMatrix M = g.jacobian(hullX);
    if (const auto* d = std::get_if<Doubleton>(&X))
        return intersect(direct, detail::meanValueForm(g, *d, M));
    const auto& t = std::get<Tripleton>(X);
    IntervalVector r = intersect(direct, detail::meanValueForm(g, t.primary(), M));
    return intersect(r, detail::meanValueForm(g, t.secondary(), M));
}

// Enclosure of A (X - y): the hull form is intersected with the exact affine
// images of every doubleton factor.
inline IntervalVector affineTransform(const RepresentableSet& X, const IntervalMatrix& A,
                                      const Vector& y) {
    if (dimOf(X) != A.cols()) throw DomainError("affineTransform: dimension mismatch");
    IntervalVector hullForm = matVec(A, enclose(X) - y);
    auto factor = [&](const Doubleton& d) {
        return matVec(A, IntervalVector(Vector(d.x - y))) + matVec(matMul(A, d.C), d.r0) +
               matVec(matMul(A, d.Q), d.q);
    };
    if (std::holds_alternative<BoxSet>(X))
        return intersect(hullForm, factor(Doubleton::fromBox(std::get<BoxSet>(X).box)));
    if (const auto* d = std::get_if<Doubleton>(&X)) return intersect(hullForm, factor(*d));
    const auto& t = std::get<Tripleton>(X);
    return intersect(intersect(hullForm, factor(t.primary())), factor(t.secondary()));
}

// Plain-text serialization (one field per line, entries as [lo, hi] pairs
// with full binary64 precision), used for experiment logging.
std::string toText(const RepresentableSet& X);
std::optional<RepresentableSet> fromText(const std::string& text);

}  // namespace poincare
