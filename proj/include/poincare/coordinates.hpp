#pragma once

#include "poincare/point_flow.hpp"
#include "poincare/poincare_map.hpp"

namespace poincare {

// Non-rigorous derivative of the return map at an (approximate) fixed point
// u of P^crossings, expressed in the section's tangent basis.
Matrix sectionReturnDerivative(const VectorField& F, const Vector& u, const Section& section,
                               double returnPeriod, const PointFlowConfig& cfg = {});

// Eigen-decomposition helper shared by the diagonalizing strategies: columns
// are unit eigenvectors sorted by decreasing |lambda|, first nonzero entry
// positive.  Throws ComplexEigenvalues when a non-real pair appears.
struct RealEigenSystem {
    Vector values;
    Matrix vectors;
};
RealEigenSystem realEigenSystem(const Matrix& M);

// Affine chart for reporting Poincare images near u: cartesian is the
// identity chart; the diagonalizing strategies use B = [v1 | S M] with S the
// section tangent basis, M the eigenvector matrix of the return derivative,
// and v1 the section normal (diag+normal) or the normalized vector field
// (diag+flowdir).
CoordinateFrame buildCoordinates(FrameStrategy strategy, const Vector& u,
                                 const Section& section, const VectorField& F,
                                 double returnPeriod, const PointFlowConfig& cfg = {});

// Section through x0 whose normal is the left eigenvector of the monodromy
// matrix for lambda = 1; the first-order variation of the crossing time
// vanishes along such a section.
struct CtoResult {
    Section section;
    Vector normal;          // unit left eigenvector
    double eigenResidual;   // ||w M - w|| / ||w||
};
CtoResult ctoSection(const VectorField& F, const Vector& x0, double period,
                     const PointFlowConfig& cfg = {});

// Scan the periodic orbit at `samples` equal time steps and return the point
// where the flow is least tangent to its own CTO section (largest |cos| of
// the angle between the vector field and the section normal); ties resolve
// to the smallest time.
struct MaxAngleResult {
    double time = 0;
    Vector point;
    Section section;
    double cosAngle = 0;                 // value attained at `time`
    std::vector<double> scanTimes;       // full scan, for reporting
    std::vector<double> scanCos;
};
MaxAngleResult maxAngleCtoPoint(const VectorField& F, const Vector& x0, double period,
                                int samples, const PointFlowConfig& cfg = {});

}  // namespace poincare
