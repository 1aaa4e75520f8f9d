#include "poincare/coordinates.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace poincare {

Matrix sectionReturnDerivative(const VectorField& F, const Vector& u, const Section& section,
                               double returnPeriod, const PointFlowConfig& cfg) {
    const int n = F.dim();
    Matrix M = monodromy(F, u, returnPeriod, cfg);
    Vector fu = F(u);
    Vector g = section.gradientAt(u);
    double gf = g.dot(fu);
    if (gf == 0) throw TangencyRisk("sectionReturnDerivative: flow tangent to section at u");
    // Flow-time correction: DP = (I - f w^T / (w.f)) M restricted to T_u Pi.
    Matrix DP = (Matrix::Identity(n, n) - fu * g.transpose() / gf) * M;
    const Matrix& S = section.tangentBasis();
    Matrix img = DP * S;
    return (S.transpose() * S).ldlt().solve(S.transpose() * img);
}

RealEigenSystem realEigenSystem(const Matrix& M) {
    const int m = static_cast<int>(M.rows());
    Eigen::EigenSolver<Matrix> es(M);
    double scale = std::max(1.0, M.norm());
    for (int i = 0; i < m; ++i)
        if (std::fabs(es.eigenvalues()[i].imag()) > 1e-9 * scale)
            throw ComplexEigenvalues("realEigenSystem: complex eigenvalue pair");

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::fabs(es.eigenvalues()[a].real()) > std::fabs(es.eigenvalues()[b].real());
    });

    RealEigenSystem sys;
    sys.values = Vector(m);
    sys.vectors = Matrix(m, m);
    for (int k = 0; k < m; ++k) {
        int i = order[k];
        sys.values[k] = es.eigenvalues()[i].real();
        Vector v = es.eigenvectors().col(i).real();
        v.normalize();
        for (int r = 0; r < m; ++r) {
            if (std::fabs(v[r]) > 1e-12) {
                if (v[r] < 0) v = -v;
                break;
            }
        }
        sys.vectors.col(k) = v;
    }
    return sys;
}

CoordinateFrame buildCoordinates(FrameStrategy strategy, const Vector& u,
                                 const Section& section, const VectorField& F,
                                 double returnPeriod, const PointFlowConfig& cfg) {
    const int n = F.dim();
    if (strategy == FrameStrategy::Cartesian) return CoordinateFrame::cartesian(n);
    if (!section.isAffine())
        throw UnsupportedSection("buildCoordinates: diagonalizing strategies need an affine section");

    Matrix K = sectionReturnDerivative(F, u, section, returnPeriod, cfg);
    RealEigenSystem eig = realEigenSystem(K);

    Vector v1;
    if (strategy == FrameStrategy::DiagNormal) {
        v1 = section.normal() / section.normal().norm();
    } else if (strategy == FrameStrategy::DiagFlowDir) {
        Vector fu = F(u);
        double nf = fu.norm();
        if (nf == 0) throw DomainError("buildCoordinates: vector field vanishes at u");
        v1 = fu / nf;
    } else {
        throw DomainError("buildCoordinates: custom frames are built by the caller");
    }

    const Matrix& S = section.tangentBasis();
    Matrix V(n, n);
    V.col(0) = v1;
    V.rightCols(n - 1) = S;
    Matrix Q = Matrix::Identity(n, n);
    Q.bottomRightCorner(n - 1, n - 1) = eig.vectors;

    CoordinateFrame frame;
    frame.y = u;
    frame.B = V * Q;
    frame.A = verifiedInverse(frame.B);
    frame.strategy = strategy;
    frame.sectionAdapted = true;
    return frame;
}

CtoResult ctoSection(const VectorField& F, const Vector& x0, double period,
                     const PointFlowConfig& cfg) {
    const int n = F.dim();
    Matrix M = monodromy(F, x0, period, cfg);

    Eigen::EigenSolver<Matrix> es(M.transpose());
    int best = 0;
    double bestDist = std::numeric_limits<double>::infinity();
    double secondDist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double d = std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0));
        if (d < bestDist) {
            secondDist = bestDist;
            bestDist = d;
            best = i;
        } else if (d < secondDist) {
            secondDist = d;
        }
    }
    if (!(secondDist > 0.1))
        throw DegenerateMultiplier("ctoSection: lambda = 1 is not a simple multiplier");
    if (std::fabs(es.eigenvalues()[best].imag()) > 1e-9)
        throw ComplexEigenvalues("ctoSection: nearest-to-one multiplier is complex");

    Vector w = es.eigenvectors().col(best).real();
    w.normalize();
    for (int r = 0; r < n; ++r) {
        if (std::fabs(w[r]) > 1e-12) {
            if (w[r] < 0) w = -w;
            break;
        }
    }

    CtoResult result;
    result.normal = w;
    result.eigenResidual = (M.transpose() * w - w).norm() / w.norm();
    double slope = w.dot(F(x0));
    if (slope == 0) throw TangencyRisk("ctoSection: flow tangent to CTO section at x0");
    result.section = Section::affineThrough(
        w, x0, slope > 0 ? CrossingDirection::Positive : CrossingDirection::Negative);
    return result;
}

MaxAngleResult maxAngleCtoPoint(const VectorField& F, const Vector& x0, double period,
                                int samples, const PointFlowConfig& cfg) {
    if (samples < 100) throw DomainError("maxAngleCtoPoint: need at least 100 samples");
    CtoResult base = ctoSection(F, x0, period, cfg);

    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i) times[i] = period * i / samples;

    MaxAngleResult result;
    result.scanTimes = times;
    result.scanCos.resize(samples);
    std::vector<Vector> points(samples);
    std::vector<Vector> normals(samples);

    // w(t) = w(0) V(t)^{-1} stays a left eigenvector along the orbit, so one
    // variational sweep covers the whole scan.
    sampleFlow(
        F, x0, times,
        [&](int i, const Vector& x, const Matrix& V) {
            Vector wt = V.transpose().fullPivLu().solve(base.normal);
            Vector f = F(x);
            result.scanCos[i] = wt.dot(f) / (wt.norm() * f.norm());
            points[i] = x;
            normals[i] = wt / wt.norm();
        },
        true, cfg);

    int bestIdx = 0;
    double bestAbs = 0;
    for (int i = 0; i < samples; ++i)
        bestAbs = std::max(bestAbs, std::fabs(result.scanCos[i]));
    for (int i = 0; i < samples; ++i) {
        if (std::fabs(result.scanCos[i]) >= bestAbs * (1.0 - 1e-9)) {
            bestIdx = i;  // earliest within tie tolerance
            break;
        }
    }

    result.time = times[bestIdx];
    result.point = points[bestIdx];
    result.cosAngle = result.scanCos[bestIdx];
    const Vector& w = normals[bestIdx];
    double slope = w.dot(F(result.point));
    result.section = Section::affineThrough(
        w, result.point, slope > 0 ? CrossingDirection::Positive : CrossingDirection::Negative);
    return result;
}

}  // namespace poincare
