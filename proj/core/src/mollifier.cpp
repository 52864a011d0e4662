#include "ovw/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ovw/errors.hpp"
#include "ovw/field_ops.hpp"
#include "ovw/spectral.hpp"

namespace ovw {

namespace {

double periodic_distance(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

spectral::Spectrum apply_multiplier(spectral::Spectrum s, const std::vector<double>& m) {
    auto d = s.data();
    for (std::size_t k = 0; k < d.size(); ++k) d[k] *= m[k];
    return s;
}

}  // namespace

void MollifierSpec::validate() const {
    if (!(epsilon > 0.0) || !(epsilon < std::numbers::pi)) {
        throw DomainError("mollifier epsilon must lie in (0, pi)");
    }
}

std::vector<double> mollifier_multiplier(const MollifierSpec& spec, const GridSpec& grid) {
    spec.validate();
    spectral::Spectrum layout(grid);
    std::vector<double> m(layout.data().size());

    if (spec.kind == MollifierKind::spectral_gaussian) {
        const double half_eps2 = 0.5 * spec.epsilon * spec.epsilon;
        for (int r = 0; r < layout.rows(); ++r) {
            const double ky = layout.ky(r);
            for (int c = 0; c < layout.cols(); ++c) {
                const double kx = c;
                m[static_cast<std::size_t>(r) * layout.cols() + c] = std::exp(-half_eps2 * (kx * kx + ky * ky));
            }
        }
        return m;
    }

    // Periodised bump exp(-1 / (1 - (r/eps)^2)), normalised so the grid quadrature is one.
    ScalarField kernel(grid);
    double mass = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const double y = periodic_distance(grid.coord(j));
        for (int i = 0; i < grid.n; ++i) {
            const double x = periodic_distance(grid.coord(i));
            const double q = (x * x + y * y) / (spec.epsilon * spec.epsilon);
            const double val = q < 1.0 ? std::exp(-1.0 / (1.0 - q)) : 0.0;
            kernel(i, j) = val;
            mass += val;
        }
    }
    mass *= grid.cell_measure();
    kernel *= grid.cell_measure() / mass;
    const auto khat = spectral::forward(kernel);
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = khat.data()[k].real();
    return m;
}

ScalarField mollify(const ScalarField& f, const MollifierSpec& spec) {
    const auto m = mollifier_multiplier(spec, f.grid());
    return spectral::inverse(apply_multiplier(spectral::forward(f), m));
}

VectorField2 mollify(const VectorField2& U, const MollifierSpec& spec) {
    const auto m = mollifier_multiplier(spec, U.grid());
    return {spectral::inverse(apply_multiplier(spectral::forward(U.u), m)),
            spectral::inverse(apply_multiplier(spectral::forward(U.v), m))};
}

SymTensor2 mollify(const SymTensor2& T, const MollifierSpec& spec) {
    const auto m = mollifier_multiplier(spec, T.grid());
    return {spectral::inverse(apply_multiplier(spectral::forward(T.xx), m)),
            spectral::inverse(apply_multiplier(spectral::forward(T.xy), m)),
            spectral::inverse(apply_multiplier(spectral::forward(T.yy), m))};
}

std::pair<SymTensor2, CommutatorReport> commutator(const VectorField2& U, const MollifierSpec& spec,
                                                   double sigma) {
    if (!(sigma > 0.0)) throw DomainError("commutator: sigma must be positive");
    const VectorField2 Ud = spectral::dealias(U);
    const VectorField2 Ue = mollify(Ud, spec);
    SymTensor2 R = sym_outer(Ue, Ue);
    R -= mollify(sym_outer(Ud, Ud), spec);

    CommutatorReport rep;
    rep.epsilon = spec.epsilon;
    rep.norm_1ps2 = lp_norm(R, 1.0 + 0.5 * sigma);
    rep.identity_residual = identity_residual(Ue);
    return {std::move(R), rep};
}

double identity_residual(const VectorField2& U) {
    const double norm = lp_norm(U, 2.0);
    const VectorField2 projected = leray_project(U);
    if (lp_norm(U - projected, 2.0) > 1e-9 * (1.0 + norm)) {
        throw InputError("identity_residual: field is not divergence free");
    }

    const SymTensor2 S = sym_gradient(U);
    const ScalarField uu = hadamard(U.u, U.u);
    const ScalarField uv = hadamard(U.u, U.v);
    const ScalarField vv = hadamard(U.v, U.v);
    const ScalarField half_sq = 0.5 * (uu + vv);

    const auto d_uu = spectral::forward(uu);
    const auto d_uv = spectral::forward(uv);
    const auto d_vv = spectral::forward(vv);
    const auto d_hs = spectral::forward(half_sq);

    // j = x: d_x(uu) + d_y(uv) + d_x(|U|^2/2);  j = y: d_x(uv) + d_y(vv) + d_y(|U|^2/2)
    auto lhs_x = spectral::dx(d_uu);
    lhs_x += spectral::dy(d_uv);
    lhs_x += spectral::dx(d_hs);
    auto lhs_y = spectral::dx(d_uv);
    lhs_y += spectral::dy(d_vv);
    lhs_y += spectral::dy(d_hs);

    ScalarField rhs_x = 2.0 * (hadamard(U.u, S.xx) + hadamard(U.v, S.xy));
    ScalarField rhs_y = 2.0 * (hadamard(U.u, S.xy) + hadamard(U.v, S.yy));

    const double rx = lp_norm(spectral::inverse(lhs_x) - rhs_x, 2.0);
    const double ry = lp_norm(spectral::inverse(lhs_y) - rhs_y, 2.0);
    return std::max(rx, ry);
}

}  // namespace ovw
