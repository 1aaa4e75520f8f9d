#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poincare/section.hpp"

namespace poincare {

// x' = y, y' = z, z' = c^2 - y - x^2/2
class MichelsonField : public FieldBase<MichelsonField> {
public:
    explicit MichelsonField(double c) : c_(c) {}
    int dim() const override { return 3; }
    double c() const { return c_; }

    template <class T>
    void apply(const T* x, T* out) const {
        out[0] = x[1];
        out[1] = x[2];
        out[2] = (c_ * c_) - x[1] - 0.5 * (x[0] * x[0]);
    }
    template <class T>
    void applyJacobian(const T* x, T* J) const {
        T zero = lift(0.0, x[0]), one = lift(1.0, x[0]);
        J[0] = zero; J[1] = one;              J[2] = zero;
        J[3] = zero; J[4] = zero;             J[5] = one;
        J[6] = -x[0]; J[7] = lift(-1.0, x[0]); J[8] = zero;
    }

private:
    double c_;
};

// x' = y, y' = z, z' = c (y^2 - 1) - x z
class FalknerSkanField : public FieldBase<FalknerSkanField> {
public:
    explicit FalknerSkanField(double c) : c_(c) {}
    int dim() const override { return 3; }
    double c() const { return c_; }

    template <class T>
    void apply(const T* x, T* out) const {
        out[0] = x[1];
        out[1] = x[2];
        out[2] = c_ * (x[1] * x[1] - 1.0) - x[0] * x[2];
    }
    template <class T>
    void applyJacobian(const T* x, T* J) const {
        T zero = lift(0.0, x[0]), one = lift(1.0, x[0]);
        J[0] = zero;  J[1] = one;               J[2] = zero;
        J[3] = zero;  J[4] = zero;              J[5] = one;
        J[6] = -x[2]; J[7] = (2.0 * c_) * x[1]; J[8] = -x[0];
    }

private:
    double c_;
};

// x' = -y - w, y' = x + a y + z, z' = d y + c w, w' = x w + b
class Rossler4DField : public FieldBase<Rossler4DField> {
public:
    Rossler4DField(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}
    int dim() const override { return 4; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    template <class T>
    void apply(const T* x, T* out) const {
        out[0] = -x[1] - x[3];
        out[1] = x[0] + a_ * x[1] + x[2];
        out[2] = d_ * x[1] + c_ * x[3];
        out[3] = x[0] * x[3] + b_;
    }
    template <class T>
    void applyJacobian(const T* x, T* J) const {
        T zero = lift(0.0, x[0]), one = lift(1.0, x[0]);
        J[0] = zero;  J[1] = -one;             J[2] = zero; J[3] = -one;
        J[4] = one;   J[5] = lift(a_, x[0]);   J[6] = one;  J[7] = zero;
        J[8] = zero;  J[9] = lift(d_, x[0]);   J[10] = zero; J[11] = lift(c_, x[0]);
        J[12] = x[3]; J[13] = zero;            J[14] = zero; J[15] = x[0];
    }

private:
    double a_, b_, c_, d_;
};

// x' = y, y' = mu y (1 - x^2) - x
class VanDerPolField : public FieldBase<VanDerPolField> {
public:
    explicit VanDerPolField(double mu) : mu_(mu) {}
    int dim() const override { return 2; }
    double mu() const { return mu_; }

    template <class T>
    void apply(const T* x, T* out) const {
        out[0] = x[1];
        out[1] = mu_ * x[1] * (1.0 - x[0] * x[0]) - x[0];
    }
    template <class T>
    void applyJacobian(const T* x, T* J) const {
        J[0] = lift(0.0, x[0]);
        J[1] = lift(1.0, x[0]);
        J[2] = -((2.0 * mu_) * (x[0] * x[1])) - 1.0;
        J[3] = mu_ * (1.0 - x[0] * x[0]);
    }

private:
    double mu_;
};

// One case-study system: field, reference periodic point, standard section,
// how many section crossings one return takes, and reference data.
struct SystemCatalogEntry {
    std::string name;
    std::vector<std::string> aliases;
    std::string equations;  // display form
    std::shared_ptr<const VectorField> field;
    std::vector<std::pair<std::string, double>> parameters;
    Vector u;
    int sectionCoord = 0;       // standard section: x[sectionCoord] = 0
    CrossingDirection sectionConstraint = CrossingDirection::Either;
    int crossings = 2;          // crossings per return of u
    double referencePeriod = 0; // frozen from Newton shooting
    std::vector<double> referenceMultipliers;  // nontrivial ones (lambda != 1)
    bool polishByDefault = false;

    Section standardSection() const {
        return Section::affine(Vector::Unit(u.size(), sectionCoord), 0.0, sectionConstraint);
    }
};

const std::vector<SystemCatalogEntry>& catalog();
const SystemCatalogEntry& findSystem(std::string_view nameOrAlias);

// Human-readable serialization of the catalog (the copy shipped in data/
// must match byte for byte).
std::string catalogToText();

}  // namespace poincare
