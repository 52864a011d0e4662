/// @file initial_data.hpp
/// @brief Exact Taylor-Green fields and seeded band-limited random velocity fields.

#pragma once

#include <cstdint>

#include "ovw/field.hpp"

namespace ovw {

/// A * exp(-2 nu t) (sin x cos y, -cos x sin y). Exact Navier-Stokes solution; steady for nu = 0.
VectorField2 taylor_green(double nu, double t, const GridSpec& grid, double amplitude = 1.0);

/// Vorticity of the Taylor-Green field: 2 A exp(-2 nu t) sin x sin y.
ScalarField taylor_green_vorticity(double nu, double t, const GridSpec& grid, double amplitude = 1.0);

struct RandomFieldSpec {
    std::uint64_t seed = 1;
    int max_mode = 8;            ///< modes with |kx|, |ky| <= max_mode
    double envelope_width = 3.0; ///< stream-function amplitudes scale like exp(-|k|^2 / (2 w^2))
    double l2_norm = 1.0;        ///< L^2 norm of the returned velocity
};

/// Divergence-free velocity from a random trigonometric stream function. Deterministic per seed.
VectorField2 band_limited_random(const GridSpec& grid, const RandomFieldSpec& spec);

}  // namespace ovw
