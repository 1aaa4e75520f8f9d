#include "poincare/section.hpp"

namespace poincare {

namespace {

// Orthonormal complement of the unit normal.  Coordinate-axis normals keep
// the remaining axes in index order so reported coordinates match the
// system's natural ones; anything else gets the Householder complement.
Matrix defaultTangentBasis(const Vector& w) {
    const int n = static_cast<int>(w.size());
    Matrix T(n, n - 1);
    int axis = -1;
    for (int i = 0; i < n; ++i) {
        if (std::fabs(std::fabs(w[i]) - w.norm()) < 1e-14 * w.norm()) {
            axis = i;
            break;
        }
    }
    if (axis >= 0) {
        int col = 0;
        for (int i = 0; i < n; ++i) {
            if (i == axis) continue;
            T.col(col++) = Vector::Unit(n, i);
        }
        return T;
    }
    Vector wh = w / w.norm();
    Vector u = wh - Vector::Unit(n, 0);
    Matrix H = Matrix::Identity(n, n);
    if (u.norm() > 1e-14) H -= 2.0 * (u * u.transpose()) / u.squaredNorm();
    return H.rightCols(n - 1);
}

}  // namespace

Section Section::affine(const Vector& normal, double offset, CrossingDirection dir) {
    if (normal.norm() == 0) throw DomainError("Section: zero normal");
    Section s;
    s.affine_ = true;
    s.dim_ = static_cast<int>(normal.size());
    s.dir_ = dir;
    s.normal_ = normal;
    s.offset_ = offset;
    s.tangent_ = defaultTangentBasis(normal);
    return s;
}

Section Section::affineThrough(const Vector& normal, const Vector& anchor, CrossingDirection dir) {
    return affine(normal, normal.dot(anchor), dir);
}

Section Section::general(Expr alpha, int dim, CrossingDirection dir) {
    Section s;
    s.affine_ = false;
    s.dim_ = dim;
    s.dir_ = dir;
    s.alpha_ = alpha;
    for (int i = 0; i < dim; ++i) s.grad_.push_back(alpha.diff(i));
    return s;
}

double Section::value(const Vector& x) const {
    if (affine_) return normal_.dot(x) - offset_;
    return alpha_->eval(x.data());
}

Interval Section::value(const IntervalVector& x) const {
    if (affine_) return dot(normal_, x) - Interval(offset_);
    std::vector<Interval> buf(x.size());
    for (int i = 0; i < x.size(); ++i) buf[i] = x[i];
    return alpha_->eval(buf.data());
}

Vector Section::gradientAt(const Vector& x) const {
    if (affine_) return normal_;
    Vector g(dim_);
    for (int i = 0; i < dim_; ++i) g[i] = grad_[i].eval(x.data());
    return g;
}

IntervalVector Section::gradient(const IntervalVector& x) const {
    if (affine_) return IntervalVector(normal_);
    std::vector<Interval> buf(x.size());
    for (int i = 0; i < x.size(); ++i) buf[i] = x[i];
    IntervalVector g(dim_);
    for (int i = 0; i < dim_; ++i) g[i] = grad_[i].eval(buf.data());
    return g;
}

Interval Section::flowForm(const VectorField& F, const IntervalVector& x) const {
    return dot(gradient(x), F(x));
}

double Section::flowForm(const VectorField& F, const Vector& x) const {
    return gradientAt(x).dot(F(x));
}

Interval Section::evalOnSet(const RepresentableSet& X) const {
    const Section* self = this;
    FunctionMap map(
        dim_, 1,
        [self](const IntervalVector& x) {
            IntervalVector r(1);
            r[0] = self->value(x);
            return r;
        },
        [self](const IntervalVector& x) {
            IntervalMatrix J(1, self->dim_);
            IntervalVector g = self->gradient(x);
            for (int i = 0; i < self->dim_; ++i) J(0, i) = g[i];
            return J;
        });
    return eval(X, map)[0];
}

const Vector& Section::normal() const {
    if (!affine_) throw UnsupportedSection("Section::normal: general section");
    return normal_;
}

double Section::offset() const {
    if (!affine_) throw UnsupportedSection("Section::offset: general section");
    return offset_;
}

const Matrix& Section::tangentBasis() const {
    if (!affine_) throw UnsupportedSection("Section::tangentBasis: general section");
    return tangent_;
}

void Section::setTangentBasis(const Matrix& basis) {
    if (!affine_) throw UnsupportedSection("Section::setTangentBasis: general section");
    if (basis.rows() != dim_ || basis.cols() != dim_ - 1)
        throw DomainError("Section::setTangentBasis: wrong shape");
    tangent_ = basis;
}

}  // namespace poincare
