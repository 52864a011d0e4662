#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ovw/field.hpp"
#include "ovw/grid.hpp"

namespace ovw::fixtures {

/// Smooth positive-or-signed field built from a few random low modes, evaluated pointwise.
inline ScalarField random_smooth_field(const GridSpec& grid, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
    struct Term {
        int kx, ky;
        double a, ph;
    };
    Term terms[6];
    for (auto& t : terms) {
        t = {static_cast<int>(rng() % 4), static_cast<int>(rng() % 4), amp(rng), phase(rng)};
    }
    const double c = amp(rng);
    return ScalarField::sample(grid, [&](double x, double y) {
        double v = c;
        for (const auto& t : terms) v += t.a * std::cos(t.kx * x + t.ky * y + t.ph);
        return scale * v;
    });
}

/// Independent L^2 norm of a vector field by direct summation in long double.
inline double l2_direct(const VectorField2& U) {
    long double s = 0.0L;
    const auto u = U.u.values();
    const auto v = U.v.values();
    for (std::size_t i = 0; i < u.size(); ++i) s += static_cast<long double>(u[i]) * u[i] + static_cast<long double>(v[i]) * v[i];
    return static_cast<double>(std::sqrt(s * U.grid().cell_measure()));
}

}  // namespace ovw::fixtures
