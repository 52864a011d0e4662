#include "ovw/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ovw/errors.hpp"

namespace ovw::orlicz {

namespace {

void require_finite(const DiscreteFunction& f, const char* what) {
    for (double v : f.values) {
        if (!std::isfinite(v)) {
            throw InputError(std::string(what) + ": non-finite sample");
        }
    }
    if (!(f.cell_measure > 0.0) || !std::isfinite(f.cell_measure)) {
        throw InputError(std::string(what) + ": cell measure must be positive");
    }
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double l1(const DiscreteFunction& f) {
    double s = 0.0;
    for (double x : f.values) s += std::abs(x);
    return s * f.cell_measure;
}

}  // namespace

double young_eval(double s) {
    if (!(s >= 0.0)) throw DomainError("young_eval: s must be nonnegative");
    return std::expm1(s);
}

double duality_gap(double s, double t) {
    if (!(s >= 0.0) || !(t >= 0.0)) throw DomainError("duality_gap: s and t must be nonnegative");
    return std::expm1(s) + t * std::log1p(t) - s * t;
}

double modular(const DiscreteFunction& f, double beta) {
    double acc = 0.0;
    const double inv = 1.0 / beta;
    for (double x : f.values) acc += std::expm1(std::abs(x) * inv);
    return acc * f.cell_measure;
}

LuxemburgResult luxemburg_norm(const DiscreteFunction& f, double tol) {
    require_finite(f, "luxemburg_norm");
    if (!(tol > 0.0)) throw DomainError("luxemburg_norm: tol must be positive");

    const double fmax = max_abs(f.values);
    if (fmax == 0.0) return {0.0, 0.0, 0};

    double hi = fmax;
    while (modular(f, hi) > 1.0) hi *= 2.0;
    double lo = fmax * 1e-8;
    while (modular(f, lo) <= 1.0) lo *= 0.5;

    LuxemburgResult out;
    for (out.iterations = 1; out.iterations <= 400; ++out.iterations) {
        const double mid = 0.5 * (lo + hi);
        const double r = modular(f, mid) - 1.0;
        out.norm = mid;
        out.residual = r;
        if (std::abs(r) <= tol && (hi - lo) <= tol * mid) break;
        if (mid <= lo || mid >= hi) break;  // bracket exhausted at double resolution
        (r > 0.0 ? lo : hi) = mid;
    }
    return out;
}

double lp_norm(const DiscreteFunction& f, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    if (std::isinf(p)) return max_abs(f.values);
    double acc = 0.0;
    for (double x : f.values) acc += std::pow(std::abs(x), p);
    return std::pow(acc * f.cell_measure, 1.0 / p);
}

EmbeddingCheck embedding_check(const DiscreteFunction& f, int p, double tol) {
    if (p < 1) throw DomainError("embedding_check: p must be >= 1");
    require_finite(f, "embedding_check");
    if (max_abs(f.values) == 0.0) throw DomainError("embedding_check: f must not vanish");
    const double lux = luxemburg_norm(f, tol).norm;
    const double factorial_root = std::exp(std::lgamma(p + 1.0) / p);
    return {lp_norm(f, p), factorial_root * lux};
}

double log_interpolation_constant() { return 1.0 + 2.0 * std::numbers::ln2; }

InterpBound log_interpolation(const DiscreteFunction& f, const DiscreteFunction& g,
                              double constant, double tol) {
    if (!(constant > 0.0)) throw DomainError("log_interpolation: constant must be positive");
    require_finite(f, "log_interpolation(f)");
    require_finite(g, "log_interpolation(g)");
    if (f.values.size() != g.values.size() || f.cell_measure != g.cell_measure) {
        throw InputError("log_interpolation: f and g live on different measures");
    }

    InterpBound out;
    out.constant_used = constant;
    const double g1 = l1(g);
    if (g1 == 0.0) return out;

    double lhs = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) lhs += std::abs(f.values[i] * g.values[i]);
    out.lhs = lhs * f.cell_measure;

    const double f_exp = luxemburg_norm(f, tol).norm;
    const double g_inf = max_abs(g.values);
    out.rhs = constant * f_exp * g1 * (std::log1p(g_inf) + std::abs(std::log(g1)) + 1.0);
    return out;
}

}  // namespace ovw::orlicz
