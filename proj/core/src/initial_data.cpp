#include "ovw/initial_data.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "ovw/errors.hpp"
#include "ovw/field_ops.hpp"

namespace ovw {

VectorField2 taylor_green(double nu, double t, const GridSpec& grid, double amplitude) {
    if (t < 0.0) throw DomainError("taylor_green: t must be nonnegative");
    const double a = amplitude * std::exp(-2.0 * nu * t);
    return {ScalarField::sample(grid, [a](double x, double y) { return a * std::sin(x) * std::cos(y); }),
            ScalarField::sample(grid, [a](double x, double y) { return -a * std::cos(x) * std::sin(y); })};
}

ScalarField taylor_green_vorticity(double nu, double t, const GridSpec& grid, double amplitude) {
    if (t < 0.0) throw DomainError("taylor_green_vorticity: t must be nonnegative");
    const double a = 2.0 * amplitude * std::exp(-2.0 * nu * t);
    return ScalarField::sample(grid, [a](double x, double y) { return a * std::sin(x) * std::sin(y); });
}

VectorField2 band_limited_random(const GridSpec& grid, const RandomFieldSpec& spec) {
    if (spec.max_mode < 1) throw InputError("band_limited_random: max_mode must be >= 1");
    if (spec.max_mode > grid.dealias_cutoff) {
        throw InputError("band_limited_random: max_mode exceeds the grid's dealiasing cutoff");
    }
    if (!(spec.envelope_width > 0.0) || !(spec.l2_norm > 0.0)) {
        throw InputError("band_limited_random: envelope width and norm must be positive");
    }

    struct Mode {
        int kx, ky;
        double a, b;
    };
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Mode> modes;
    const double w2 = 2.0 * spec.envelope_width * spec.envelope_width;
    // Half plane: kx > 0, or kx == 0 and ky > 0.
    for (int kx = 0; kx <= spec.max_mode; ++kx) {
        for (int ky = -spec.max_mode; ky <= spec.max_mode; ++ky) {
            if (kx == 0 && ky <= 0) continue;
            const double env = std::exp(-static_cast<double>(kx * kx + ky * ky) / w2);
            const double a = normal(rng) * env;
            const double b = normal(rng) * env;
            modes.push_back({kx, ky, a, b});
        }
    }

    // u = d psi / dy, v = -d psi / dx, evaluated analytically per mode.
    VectorField2 U = VectorField2::zeros(grid);
    for (int j = 0; j < grid.n; ++j) {
        const double y = grid.coord(j);
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.coord(i);
            double u = 0.0;
            double v = 0.0;
            for (const auto& m : modes) {
                const double phase = m.kx * x + m.ky * y;
                const double c = std::cos(phase);
                const double s = std::sin(phase);
                // psi = a cos(phase) + b sin(phase)
                const double dpsi = -m.a * s + m.b * c;
                u += m.ky * dpsi;
                v -= m.kx * dpsi;
            }
            U.u(i, j) = u;
            U.v(i, j) = v;
        }
    }
    const double norm = lp_norm(U, 2.0);
    if (!(norm > 0.0)) throw InputError("band_limited_random: generated field vanished");
    U *= spec.l2_norm / norm;
    return U;
}

}  // namespace ovw
