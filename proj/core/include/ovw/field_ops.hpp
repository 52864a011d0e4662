/// @file field_ops.hpp
/// @brief Spectral differential operators, Leray projection and norms on the torus.

#pragma once

#include "ovw/field.hpp"
#include "ovw/orlicz.hpp"

namespace ovw {

/// Which measure the norms integrate against.
enum class Measure {
    torus,        ///< Lebesgue measure, total mass 4 pi^2
    probability,  ///< normalised to total mass one
};

VectorField2 gradient(const ScalarField& f);

/// (grad U + grad U^T) / 2.
SymTensor2 sym_gradient(const VectorField2& U);

ScalarField divergence(const VectorField2& U);

/// Scalar vorticity dv/dx - du/dy.
ScalarField curl(const VectorField2& U);

/// Projection onto divergence-free fields; the mean mode is untouched.
VectorField2 leray_project(const VectorField2& U);

/// max |div U| evaluated spectrally.
double max_divergence(const VectorField2& U);

/// Integral of |grad U|^2 summed over components.
double grad_l2_squared(const VectorField2& U);

/// Integral of grad a : grad b (full gradients, summed over components).
double grad_inner(const VectorField2& a, const VectorField2& b);

double lp_norm(const ScalarField& f, double p, Measure m = Measure::torus);
double lp_norm(const VectorField2& f, double p, Measure m = Measure::torus);
double lp_norm(const SymTensor2& f, double p, Measure m = Measure::torus);

/// Luxemburg norm of the pointwise magnitude.
orlicz::LuxemburgResult lexp_norm(const ScalarField& f, double tol = orlicz::kDefaultLuxemburgTol);
orlicz::LuxemburgResult lexp_norm(const SymTensor2& f, double tol = orlicz::kDefaultLuxemburgTol);

}  // namespace ovw
