#pragma once

#include <optional>

#include "poincare/sets.hpp"
#include "poincare/vector_field.hpp"

namespace poincare {

// Required sign of d(alpha)/dt at an accepted crossing.
enum class CrossingDirection { Positive, Negative, Either };

inline int signOf(CrossingDirection d) {
    return d == CrossingDirection::Positive ? 1 : d == CrossingDirection::Negative ? -1 : 0;
}

// A Poincare section given by the zero set of a scalar function alpha with a
// crossing-direction constraint.  Affine sections (alpha(x) = w.x - offset)
// carry a deterministic tangent basis used by section-adapted coordinate
// frames; general sections are polynomial expressions.
class Section {
public:
    static Section affine(const Vector& normal, double offset,
                          CrossingDirection dir = CrossingDirection::Either);
    static Section affineThrough(const Vector& normal, const Vector& anchor,
                                 CrossingDirection dir = CrossingDirection::Either);
    static Section general(Expr alpha, int dim,
                           CrossingDirection dir = CrossingDirection::Either);

    int dim() const { return dim_; }
    bool isAffine() const { return affine_; }
    CrossingDirection direction() const { return dir_; }
    Section withDirection(CrossingDirection d) const {
        Section s = *this;
        s.dir_ = d;
        return s;
    }

    double value(const Vector& x) const;
    Interval value(const IntervalVector& x) const;
    Vector gradientAt(const Vector& x) const;
    IntervalVector gradient(const IntervalVector& x) const;

    // Enclosure of grad(alpha) . f over a box.
    Interval flowForm(const VectorField& F, const IntervalVector& x) const;
    double flowForm(const VectorField& F, const Vector& x) const;

    // Representation-aware enclosure of alpha over a set.
    Interval evalOnSet(const RepresentableSet& X) const;

    // Affine-only accessors.
    const Vector& normal() const;
    double offset() const;
    // n x (n-1) matrix of tangent directions.  For coordinate-axis normals
    // this is the remaining axes in the stored order; otherwise a Householder
    // complement of the unit normal.
    const Matrix& tangentBasis() const;
    void setTangentBasis(const Matrix& basis);

private:
    Section() = default;
    bool affine_ = true;
    int dim_ = 0;
    CrossingDirection dir_ = CrossingDirection::Either;
    Vector normal_;
    double offset_ = 0;
    Matrix tangent_;
    std::optional<Expr> alpha_;
    std::vector<Expr> grad_;
};

}  // namespace poincare
