#include "ovw/field_ops.hpp"

#include <cmath>

#include "ovw/errors.hpp"
#include "ovw/spectral.hpp"

namespace ovw {

using spectral::Complex;
using spectral::Spectrum;

VectorField2 gradient(const ScalarField& f) {
    const auto s = spectral::forward(f);
    return {spectral::inverse(spectral::dx(s)), spectral::inverse(spectral::dy(s))};
}

SymTensor2 sym_gradient(const VectorField2& U) {
    const auto su = spectral::forward(U.u);
    const auto sv = spectral::forward(U.v);
    SymTensor2 t;
    t.xx = spectral::inverse(spectral::dx(su));
    t.yy = spectral::inverse(spectral::dy(sv));
    auto cross = spectral::dy(su);
    cross += spectral::dx(sv);
    cross *= 0.5;
    t.xy = spectral::inverse(cross);
    return t;
}

ScalarField divergence(const VectorField2& U) {
    auto d = spectral::dx(spectral::forward(U.u));
    d += spectral::dy(spectral::forward(U.v));
    return spectral::inverse(d);
}

ScalarField curl(const VectorField2& U) {
    auto w = spectral::dx(spectral::forward(U.v));
    w -= spectral::dy(spectral::forward(U.u));
    return spectral::inverse(w);
}

VectorField2 leray_project(const VectorField2& U) {
    auto su = spectral::forward(U.u);
    auto sv = spectral::forward(U.v);
    for (int r = 0; r < su.rows(); ++r) {
        const double ky = su.dky(r);
        for (int c = 0; c < su.cols(); ++c) {
            const double kx = su.dkx(c);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            const Complex kdotu = (kx * su.at(r, c) + ky * sv.at(r, c)) / k2;
            su.at(r, c) -= kx * kdotu;
            sv.at(r, c) -= ky * kdotu;
        }
    }
    return {spectral::inverse(su), spectral::inverse(sv)};
}

double max_divergence(const VectorField2& U) { return divergence(U).max_abs(); }

double grad_l2_squared(const VectorField2& U) {
    const auto su = spectral::forward(U.u);
    const auto sv = spectral::forward(U.v);
    return spectral::l2_squared(spectral::dx(su)) + spectral::l2_squared(spectral::dy(su)) +
           spectral::l2_squared(spectral::dx(sv)) + spectral::l2_squared(spectral::dy(sv));
}

double grad_inner(const VectorField2& a, const VectorField2& b) {
    const auto ga = gradient(a.u);
    const auto gb = gradient(b.u);
    const auto ha = gradient(a.v);
    const auto hb = gradient(b.v);
    return dot_integral(ga, gb) + dot_integral(ha, hb);
}

double lp_norm(const ScalarField& f, double p, Measure m) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    const double raw = orlicz::lp_norm(f.as_measure(), p);
    if (m == Measure::torus || std::isinf(p)) return raw;
    return raw * std::pow(GridSpec::measure(), -1.0 / p);
}

double lp_norm(const VectorField2& f, double p, Measure m) { return lp_norm(f.magnitude(), p, m); }

double lp_norm(const SymTensor2& f, double p, Measure m) { return lp_norm(f.magnitude(), p, m); }

orlicz::LuxemburgResult lexp_norm(const ScalarField& f, double tol) {
    ScalarField mag = f;
    for (double& v : mag.values()) v = std::abs(v);
    return orlicz::luxemburg_norm(mag.as_measure(), tol);
}

orlicz::LuxemburgResult lexp_norm(const SymTensor2& f, double tol) {
    return orlicz::luxemburg_norm(f.magnitude().as_measure(), tol);
}

}  // namespace ovw
