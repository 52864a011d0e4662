/// @file field.hpp
/// @brief Doubly periodic fields sampled on a GridSpec.
///
/// Storage is row-major with the y index outermost: value(i, j) sits at
/// j * n + i and is sampled at (x, y) = (i dx, j dx).

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ovw/grid.hpp"
#include "ovw/orlicz.hpp"

namespace ovw {

class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(GridSpec grid, double fill = 0.0);
    ScalarField(GridSpec grid, std::vector<double> values);

    static ScalarField sample(GridSpec grid, const std::function<double(double, double)>& fn);

    const GridSpec& grid() const { return grid_; }
    int n() const { return grid_.n; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double operator()(int i, int j) const { return values_[index(i, j)]; }
    double& operator()(int i, int j) { return values_[index(i, j)]; }

    /// View for the Orlicz routines (cell measure dx^2).
    orlicz::DiscreteFunction as_measure() const { return {values_, grid_.cell_measure()}; }

    double max_abs() const;
    bool all_finite() const;
    /// Rectangle-rule integral over the torus.
    double integral() const;
    double mean() const { return integral() / GridSpec::measure(); }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double s);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, double s) { return a *= s; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

    /// Pointwise product, no dealiasing (see spectral.hpp for that).
    friend ScalarField hadamard(const ScalarField& a, const ScalarField& b);

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.n) + static_cast<std::size_t>(i);
    }

    GridSpec grid_{};
    std::vector<double> values_;
};

/// Velocity-like field in two dimensions.
struct VectorField2 {
    ScalarField u;
    ScalarField v;

    static VectorField2 zeros(GridSpec grid) { return {ScalarField(grid), ScalarField(grid)}; }
    const GridSpec& grid() const { return u.grid(); }

    /// Pointwise Euclidean magnitude.
    ScalarField magnitude() const;

    VectorField2& operator+=(const VectorField2& o);
    VectorField2& operator-=(const VectorField2& o);
    VectorField2& operator*=(double s);
    friend VectorField2 operator+(VectorField2 a, const VectorField2& b) { return a += b; }
    friend VectorField2 operator-(VectorField2 a, const VectorField2& b) { return a -= b; }
    friend VectorField2 operator*(VectorField2 a, double s) { return a *= s; }
    friend VectorField2 operator*(double s, VectorField2 a) { return a *= s; }
};

/// Symmetric 2x2 tensor field; only the three independent components are stored.
struct SymTensor2 {
    ScalarField xx;
    ScalarField xy;
    ScalarField yy;

    static SymTensor2 zeros(GridSpec grid) { return {ScalarField(grid), ScalarField(grid), ScalarField(grid)}; }
    const GridSpec& grid() const { return xx.grid(); }

    /// Pointwise Frobenius magnitude sqrt(xx^2 + 2 xy^2 + yy^2).
    ScalarField magnitude() const;

    SymTensor2& operator-=(const SymTensor2& o);
    friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
};

/// Integral of A : B over the torus.
double contract_integral(const SymTensor2& a, const SymTensor2& b);

/// Integral of u . v over the torus.
double dot_integral(const VectorField2& a, const VectorField2& b);

/// Outer product a (x) b symmetrised; for a == b this is a (x) a.
SymTensor2 sym_outer(const VectorField2& a, const VectorField2& b);

}  // namespace ovw
