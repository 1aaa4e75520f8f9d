#pragma once

#include <memory>
#include <string>
#include <vector>

#include "poincare/interval_linalg.hpp"
#include "poincare/jet.hpp"

namespace poincare {

// Lift a double constant into the scalar type of the surrounding expression
// (plain number, interval, or a jet of matching length).
inline double lift(double v, const double&) { return v; }
inline Interval lift(double v, const Interval&) { return Interval(v); }
template <class T>
Jet<T> lift(double v, const Jet<T>& like) {
    return Jet<T>::constant(v, like.length());
}

// An autonomous vector field x' = f(x) evaluable over points, intervals and
// jets, together with its Jacobian.  Jet evaluation is what drives the
// Taylor recurrences for solution coefficients.
class VectorField {
public:
    virtual ~VectorField() = default;
    virtual int dim() const = 0;

    virtual void eval(const double* x, double* out) const = 0;
    virtual void eval(const Interval* x, Interval* out) const = 0;
    virtual void eval(const DJet* x, DJet* out) const = 0;
    virtual void eval(const IJet* x, IJet* out) const = 0;

    // Row-major dim() x dim() Jacobian.
    virtual void jacobian(const double* x, double* J) const = 0;
    virtual void jacobian(const Interval* x, Interval* J) const = 0;
    virtual void jacobian(const DJet* x, DJet* J) const = 0;
    virtual void jacobian(const IJet* x, IJet* J) const = 0;

    Vector operator()(const Vector& x) const {
        Vector out(dim());
        eval(x.data(), out.data());
        return out;
    }
    IntervalVector operator()(const IntervalVector& x) const {
        const int n = dim();
        std::vector<Interval> in(n), out(n);
        for (int i = 0; i < n; ++i) in[i] = x[i];
        eval(in.data(), out.data());
        IntervalVector r(n);
        for (int i = 0; i < n; ++i) r[i] = out[i];
        return r;
    }
    Matrix jacobianAt(const Vector& x) const {
        const int n = dim();
        Matrix J(n, n);
        std::vector<double> buf(n * n);
        jacobian(x.data(), buf.data());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) J(i, j) = buf[i * n + j];
        return J;
    }
    IntervalMatrix jacobianAt(const IntervalVector& x) const {
        const int n = dim();
        std::vector<Interval> in(n), buf(n * n);
        for (int i = 0; i < n; ++i) in[i] = x[i];
        jacobian(in.data(), buf.data());
        IntervalMatrix J(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) J(i, j) = buf[i * n + j];
        return J;
    }

    Interval divergence(const IntervalVector& x) const {
        IntervalMatrix J = jacobianAt(x);
        Interval t(0.0);
        for (int i = 0; i < dim(); ++i) t += J(i, i);
        return t;
    }
    double divergence(const Vector& x) const {
        return jacobianAt(x).trace();
    }
};

// CRTP helper: a concrete field supplies
//   template<class T> void apply(const T* x, T* out) const;
//   template<class T> void applyJacobian(const T* x, T* J) const;
// and the base instantiates them for every scalar type.
template <class Derived>
class FieldBase : public VectorField {
public:
    void eval(const double* x, double* out) const override { self().template apply<double>(x, out); }
    void eval(const Interval* x, Interval* out) const override { self().template apply<Interval>(x, out); }
    void eval(const DJet* x, DJet* out) const override { self().template apply<DJet>(x, out); }
    void eval(const IJet* x, IJet* out) const override { self().template apply<IJet>(x, out); }
    void jacobian(const double* x, double* J) const override { self().template applyJacobian<double>(x, J); }
    void jacobian(const Interval* x, Interval* J) const override { self().template applyJacobian<Interval>(x, J); }
    void jacobian(const DJet* x, DJet* J) const override { self().template applyJacobian<DJet>(x, J); }
    void jacobian(const IJet* x, IJet* J) const override { self().template applyJacobian<IJet>(x, J); }

private:
    const Derived& self() const { return static_cast<const Derived&>(*this); }
};

// Minimal expression graph (+, -, *, constants, variables) for user-defined
// polynomial fields.  Differentiation is symbolic.
class Expr {
public:
    static Expr constant(double v) { return Expr(std::make_shared<Node>(Node{Tag::Const, v, -1, {}, {}})); }
    static Expr var(int index) { return Expr(std::make_shared<Node>(Node{Tag::Var, 0.0, index, {}, {}})); }

    friend Expr operator+(const Expr& a, const Expr& b) { return combine(Tag::Add, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return combine(Tag::Sub, a, b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return combine(Tag::Mul, a, b); }
    friend Expr operator+(const Expr& a, double s) { return a + constant(s); }
    friend Expr operator+(double s, const Expr& a) { return constant(s) + a; }
    friend Expr operator-(const Expr& a, double s) { return a - constant(s); }
    friend Expr operator-(double s, const Expr& a) { return constant(s) - a; }
    friend Expr operator*(const Expr& a, double s) { return a * constant(s); }
    friend Expr operator*(double s, const Expr& a) { return constant(s) * a; }
    Expr operator-() const { return constant(0.0) - *this; }

    template <class T>
    T eval(const T* x) const {
        switch (node_->tag) {
            case Tag::Const: return lift(node_->value, x[0]);
            case Tag::Var: return x[node_->index];
            case Tag::Add: return node_->lhs.eval(x) + node_->rhs.eval(x);
            case Tag::Sub: return node_->lhs.eval(x) - node_->rhs.eval(x);
            case Tag::Mul: return node_->lhs.eval(x) * node_->rhs.eval(x);
        }
        return lift(0.0, x[0]);
    }

    Expr diff(int var) const {
        switch (node_->tag) {
            case Tag::Const: return constant(0.0);
            case Tag::Var: return constant(node_->index == var ? 1.0 : 0.0);
            case Tag::Add: return node_->lhs.diff(var) + node_->rhs.diff(var);
            case Tag::Sub: return node_->lhs.diff(var) - node_->rhs.diff(var);
            case Tag::Mul:
                return node_->lhs.diff(var) * node_->rhs + node_->lhs * node_->rhs.diff(var);
        }
        return constant(0.0);
    }

private:
    enum class Tag { Const, Var, Add, Sub, Mul };
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    struct Node {
        Tag tag;
        double value;
        int index;
        Expr lhs, rhs;
    };
    static Expr combine(Tag t, const Expr& a, const Expr& b) {
        return Expr(std::make_shared<Node>(Node{t, 0.0, -1, a, b}));
    }
    std::shared_ptr<const Node> node_;

public:
    Expr() : node_(nullptr) {}  // empty slot inside Node; never evaluated
};

// Vector field defined by one expression per component.
class ExprField : public VectorField {
public:
    explicit ExprField(std::vector<Expr> components) : f_(std::move(components)) {
        const int n = dim();
        jac_.reserve(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) jac_.push_back(f_[i].diff(j));
    }

    int dim() const override { return static_cast<int>(f_.size()); }

    void eval(const double* x, double* out) const override { evalT(x, out); }
    void eval(const Interval* x, Interval* out) const override { evalT(x, out); }
    void eval(const DJet* x, DJet* out) const override { evalT(x, out); }
    void eval(const IJet* x, IJet* out) const override { evalT(x, out); }
    void jacobian(const double* x, double* J) const override { jacT(x, J); }
    void jacobian(const Interval* x, Interval* J) const override { jacT(x, J); }
    void jacobian(const DJet* x, DJet* J) const override { jacT(x, J); }
    void jacobian(const IJet* x, IJet* J) const override { jacT(x, J); }

private:
    template <class T>
    void evalT(const T* x, T* out) const {
        for (int i = 0; i < dim(); ++i) out[i] = f_[i].eval(x);
    }
    template <class T>
    void jacT(const T* x, T* J) const {
        for (size_t k = 0; k < jac_.size(); ++k) J[k] = jac_[k].eval(x);
    }
    std::vector<Expr> f_;
    std::vector<Expr> jac_;
};

}  // namespace poincare
