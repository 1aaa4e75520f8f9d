#pragma once

#include <vector>

#include "poincare/vector_field.hpp"

namespace poincare {

namespace detail {

inline double divByInt(double a, int k) { return a / k; }
inline Interval divByInt(const Interval& a, int k) { return a / Interval(double(k)); }

inline bool finiteCoeff(double a) { return std::isfinite(a); }
inline bool finiteCoeff(const Interval& a) { return a.isFinite(); }

// Taylor coefficients of the solution of x' = f(x) from x(0) = x0:
// c_{k+1} = (f composed with the truncated solution)_k / (k+1).
// Returns per-component jets filled up to degree `order`.
template <class S>
std::vector<Jet<S>> jetSolution(const VectorField& F, const std::vector<S>& x0, int order) {
    const int n = F.dim();
    const int len = order + 1;
    std::vector<Jet<S>> x(n, Jet<S>(len)), fx(n, Jet<S>(len));
    for (int i = 0; i < n; ++i) x[i][0] = x0[i];
    for (int k = 0; k < order; ++k) {
        F.eval(x.data(), fx.data());
        for (int i = 0; i < n; ++i) {
            x[i][k + 1] = divByInt(fx[i][k], k + 1);
            if (!finiteCoeff(x[i][k + 1]))
                throw Divergence("solution jet coefficient overflow");
        }
    }
    return x;
}

// Coefficients of t -> Df(x(t)) along the solution jets: A[j] is a row-major
// n*n block of degree-j coefficients.
template <class S>
std::vector<std::vector<S>> jetJacobianCoeffs(const VectorField& F, const std::vector<Jet<S>>& x) {
    const int n = F.dim();
    const int len = x[0].length();
    std::vector<Jet<S>> J(n * n, Jet<S>(len));
    F.jacobian(x.data(), J.data());
    std::vector<std::vector<S>> A(len, std::vector<S>(n * n, S(0.0)));
    for (int e = 0; e < n * n; ++e)
        for (int j = 0; j < len; ++j) A[j][e] = J[e][j];
    return A;
}

// Taylor coefficients of the variational flow V' = Df(x(t)) V, V(0) = V0:
// V_{k+1} = (sum_{j<=k} A_j V_{k-j}) / (k+1), matrices row-major n*n.
template <class S>
std::vector<std::vector<S>> jetVariational(const VectorField& F, const std::vector<Jet<S>>& x,
                                           const std::vector<S>& V0, int order) {
    const int n = F.dim();
    auto A = jetJacobianCoeffs(F, x);
    std::vector<std::vector<S>> V(order + 1, std::vector<S>(n * n, S(0.0)));
    V[0] = V0;
    for (int k = 0; k < order; ++k) {
        std::vector<S> acc(n * n, S(0.0));
        for (int j = 0; j <= k; ++j) {
            const auto& Aj = A[j];
            const auto& Vk = V[k - j];
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    S s(0.0);
                    for (int m = 0; m < n; ++m) s += Aj[r * n + m] * Vk[m * n + c];
                    acc[r * n + c] += s;
                }
        }
        for (int e = 0; e < n * n; ++e) {
            V[k + 1][e] = divByInt(acc[e], k + 1);
            if (!finiteCoeff(V[k + 1][e]))
                throw Divergence("variational jet coefficient overflow");
        }
    }
    return V;
}

}  // namespace detail

// Interval Taylor coefficients of the solution through x0; coefficient 0 is
// x0 itself and the true solution's coefficients are contained componentwise.
inline std::vector<IntervalVector> solutionJet(const VectorField& F, const IntervalVector& x0,
                                               int order) {
    if (order < 1) throw DomainError("solutionJet: order must be >= 1");
    const int n = F.dim();
    std::vector<Interval> seed(n);
    for (int i = 0; i < n; ++i) seed[i] = x0[i];
    auto jets = detail::jetSolution(F, seed, order);
    std::vector<IntervalVector> c(order + 1, IntervalVector(n));
    for (int k = 0; k <= order; ++k)
        for (int i = 0; i < n; ++i) c[k][i] = jets[i][k];
    return c;
}

// Non-rigorous Taylor coefficients of the variational matrix V(t) with
// V(0) = V0, propagated along the point solution through x0.
inline std::vector<Matrix> variationalJet(const VectorField& F, const Vector& x0,
                                          const Matrix& V0, int order) {
    if (order < 1) throw DomainError("variationalJet: order must be >= 1");
    const int n = F.dim();
    std::vector<double> seed(x0.data(), x0.data() + n);
    auto jets = detail::jetSolution(F, seed, order);
    std::vector<double> v0(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v0[i * n + j] = V0(i, j);
    auto V = detail::jetVariational(F, jets, v0, order);
    std::vector<Matrix> out(order + 1, Matrix(n, n));
    for (int k = 0; k <= order; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[k](i, j) = V[k][i * n + j];
    return out;
}

}  // namespace poincare
