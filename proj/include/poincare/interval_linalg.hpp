#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <vector>

#include "poincare/interval.hpp"

namespace poincare {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class IntervalVector {
public:
    IntervalVector() = default;
    explicit IntervalVector(int n) : v_(n) {}
    IntervalVector(std::initializer_list<Interval> xs) : v_(xs) {}
    explicit IntervalVector(const Vector& p) : v_(p.size()) {
        for (int i = 0; i < p.size(); ++i) v_[i] = Interval(p[i]);
    }

    int size() const { return static_cast<int>(v_.size()); }
    Interval& operator[](int i) { return v_[i]; }
    const Interval& operator[](int i) const { return v_[i]; }

    Vector mid() const {
        Vector m(size());
        for (int i = 0; i < size(); ++i) m[i] = v_[i].mid();
        return m;
    }
    Vector diam() const {
        Vector d(size());
        for (int i = 0; i < size(); ++i) d[i] = v_[i].diam();
        return d;
    }
    double maxDiam() const {
        double d = 0;
        for (const auto& x : v_) d = std::max(d, x.diam());
        return d;
    }

    bool contains(const Vector& p) const {
        if (p.size() != size()) return false;
        for (int i = 0; i < size(); ++i)
            if (!v_[i].contains(p[i])) return false;
        return true;
    }
    bool contains(const IntervalVector& o) const {
        for (int i = 0; i < size(); ++i)
            if (!v_[i].contains(o[i])) return false;
        return true;
    }

    IntervalVector operator-() const {
        IntervalVector r(size());
        for (int i = 0; i < size(); ++i) r[i] = -v_[i];
        return r;
    }
    friend IntervalVector operator+(const IntervalVector& a, const IntervalVector& b) {
        IntervalVector r(a.size());
        for (int i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend IntervalVector operator-(const IntervalVector& a, const IntervalVector& b) {
        IntervalVector r(a.size());
        for (int i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
        return r;
    }
    friend IntervalVector operator+(const IntervalVector& a, const Vector& b) {
        return a + IntervalVector(b);
    }
    friend IntervalVector operator-(const IntervalVector& a, const Vector& b) {
        return a - IntervalVector(b);
    }
    friend IntervalVector operator+(const Vector& a, const IntervalVector& b) {
        return IntervalVector(a) + b;
    }
    friend IntervalVector operator-(const Vector& a, const IntervalVector& b) {
        return IntervalVector(a) - b;
    }
    friend IntervalVector operator*(const Interval& s, const IntervalVector& a) {
        IntervalVector r(a.size());
        for (int i = 0; i < a.size(); ++i) r[i] = s * a[i];
        return r;
    }

    // Upper bound on the sup norm.
    double norm() const {
        double n = 0;
        for (const auto& x : v_) n = std::max(n, x.mag());
        return n;
    }

private:
    std::vector<Interval> v_;
};

inline IntervalVector hull(const IntervalVector& a, const IntervalVector& b) {
    IntervalVector r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

inline IntervalVector intersect(const IntervalVector& a, const IntervalVector& b) {
    IntervalVector r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = intersect(a[i], b[i]);
    return r;
}

inline Interval dot(const IntervalVector& a, const IntervalVector& b) {
    Interval s(0.0);
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Interval dot(const Vector& a, const IntervalVector& b) {
    Interval s(0.0);
    for (int i = 0; i < b.size(); ++i) s += Interval(a[i]) * b[i];
    return s;
}

class IntervalMatrix {
public:
    IntervalMatrix() : rows_(0), cols_(0) {}
    IntervalMatrix(int rows, int cols) : rows_(rows), cols_(cols), m_(rows * cols) {}
    explicit IntervalMatrix(const Matrix& p) : IntervalMatrix(int(p.rows()), int(p.cols())) {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) (*this)(i, j) = Interval(p(i, j));
    }

    static IntervalMatrix identity(int n) {
        IntervalMatrix I(n, n);
        for (int i = 0; i < n; ++i) I(i, i) = Interval(1.0);
        return I;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Interval& operator()(int i, int j) { return m_[i * cols_ + j]; }
    const Interval& operator()(int i, int j) const { return m_[i * cols_ + j]; }

    Matrix mid() const {
        Matrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).mid();
        return r;
    }

    bool contains(const Matrix& p) const {
        if (p.rows() != rows_ || p.cols() != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!(*this)(i, j).contains(p(i, j))) return false;
        return true;
    }

    friend IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
        IntervalMatrix r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.m_.size(); ++k) r.m_[k] = a.m_[k] + b.m_[k];
        return r;
    }
    friend IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
        IntervalMatrix r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.m_.size(); ++k) r.m_[k] = a.m_[k] - b.m_[k];
        return r;
    }
    friend IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a) {
        IntervalMatrix r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.m_.size(); ++k) r.m_[k] = s * a.m_[k];
        return r;
    }

    // Upper bound on the infinity norm (max row sum of magnitudes).
    double norm() const {
        double n = 0;
        for (int i = 0; i < rows_; ++i) {
            double s = 0;
            for (int j = 0; j < cols_; ++j) s = rnd::add_up(s, (*this)(i, j).mag());
            n = std::max(n, s);
        }
        return n;
    }

private:
    int rows_, cols_;
    std::vector<Interval> m_;
};

inline IntervalVector matVec(const IntervalMatrix& M, const IntervalVector& v) {
    if (M.cols() != v.size()) throw DomainError("matVec: dimension mismatch");
    IntervalVector r(M.rows());
    for (int i = 0; i < M.rows(); ++i) {
        Interval s(0.0);
        for (int j = 0; j < M.cols(); ++j) s += M(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline IntervalVector matVec(const Matrix& M, const IntervalVector& v) {
    if (M.cols() != v.size()) throw DomainError("matVec: dimension mismatch");
    IntervalVector r(int(M.rows()));
    for (int i = 0; i < M.rows(); ++i) {
        Interval s(0.0);
        for (int j = 0; j < M.cols(); ++j) s += Interval(M(i, j)) * v[j];
        r[i] = s;
    }
    return r;
}

inline IntervalMatrix matMul(const IntervalMatrix& A, const IntervalMatrix& B) {
    if (A.cols() != B.rows()) throw DomainError("matMul: dimension mismatch");
    IntervalMatrix r(A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            Interval s(0.0);
            for (int k = 0; k < A.cols(); ++k) s += A(i, k) * B(k, j);
            r(i, j) = s;
        }
    return r;
}

inline IntervalMatrix matMul(const IntervalMatrix& A, const Matrix& B) {
    return matMul(A, IntervalMatrix(B));
}

inline IntervalMatrix matMul(const Matrix& A, const IntervalMatrix& B) {
    return matMul(IntervalMatrix(A), B);
}

inline IntervalMatrix intersect(const IntervalMatrix& A, const IntervalMatrix& B) {
    IntervalMatrix r(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) r(i, j) = intersect(A(i, j), B(i, j));
    return r;
}

// Rigorous enclosure of B^{-1} for a point matrix B: approximate inverse
// plus a Krawczyk-style residual bound, then a few refinement sweeps.
// The exact inverse satisfies X = A0 + (I - A0 B) X, so any enclosure may be
// intersected with A0 + R*X.
inline IntervalMatrix verifiedInverse(const Matrix& B, int sweeps = 5) {
    const int n = int(B.rows());
    if (B.cols() != n) throw DomainError("verifiedInverse: matrix not square");
    Eigen::FullPivLU<Matrix> lu(B);
    if (!lu.isInvertible()) throw SingularMatrix("verifiedInverse: numerically singular");
    Matrix A0 = lu.inverse();

    IntervalMatrix iB(B), iA0(A0);
    IntervalMatrix R = IntervalMatrix::identity(n) - matMul(iA0, iB);
    double rho = R.norm();
    if (!(rho < 1.0))
        throw SingularMatrix("verifiedInverse: residual norm >= 1, cannot verify");

    // ||B^{-1} - A0||_inf <= rho * ||A0||_inf / (1 - rho); pad by one ulp.
    double normA0 = IntervalMatrix(A0).norm();
    double d = rnd::next_up(rnd::div_up(rnd::mul_up(rho, normA0), rnd::sub_down(1.0, rho)));
    IntervalMatrix X(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            X(i, j) = Interval(A0(i, j)) + Interval::raw(-d, d);

    for (int s = 0; s < sweeps; ++s)
        X = intersect(X, iA0 + matMul(R, X));
    return X;
}

// Enclosure of B^{-1} v via the verified inverse.
inline IntervalVector verifiedSolve(const Matrix& B, const IntervalVector& v) {
    return matVec(verifiedInverse(B), v);
}

}  // namespace poincare
