#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ovw/errors.hpp"
#include "ovw/field_ops.hpp"
#include "ovw/orlicz.hpp"
#include "support.hpp"

using namespace ovw;
using namespace ovw::orlicz;

namespace {

/// |E| = 1 indicator of height `height`: k cells of measure 1/k, padded with zeros.
std::vector<double> unit_indicator(int k, int zeros, double height = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(k), height);
    v.resize(static_cast<std::size_t>(k + zeros), 0.0);
    return v;
}

/// Independent Luxemburg oracle: secant iteration in long double on log(beta).
long double luxemburg_oracle(const std::vector<double>& values, double cell) {
    auto mod = [&](long double beta) {
        long double s = 0.0L;
        for (double x : values) s += std::expm1(std::fabs(static_cast<long double>(x)) / beta);
        return s * cell - 1.0L;
    };
    long double lo = 1e-6L, hi = 1e6L;
    for (int i = 0; i < 300; ++i) {
        const long double mid = std::sqrt(lo * hi);
        (mod(mid) > 0 ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

}  // namespace

TEST(YoungFunction, Values) {
    EXPECT_EQ(young_eval(0.0), 0.0);
    EXPECT_NEAR(young_eval(1.0), static_cast<double>(std::expm1(1.0L)), 1e-15);
    EXPECT_NEAR(young_eval(1.0), 1.718282, 1e-6);
    EXPECT_NEAR(young_eval(std::numbers::ln2), 1.0, 1e-15);
    EXPECT_THROW(young_eval(-1e-3), DomainError);
}

TEST(DualityGap, ClosedForms) {
    EXPECT_NEAR(duality_gap(0.0, 5.0), 5.0 * std::log(6.0), 1e-13);
    EXPECT_NEAR(duality_gap(1.0, 1.0), std::numbers::e - 1.0 + std::numbers::ln2 - 1.0, 1e-14);
    EXPECT_NEAR(duality_gap(1.0, 1.0), 1.411429, 1e-6);
    const double t = std::expm1(2.0);
    // e^2 - 1 + t log(e^2) - 2t = t
    EXPECT_NEAR(duality_gap(2.0, t), t, 1e-12);
    // Minimum over s sits at s = log t with value t - 1 + t log(1 + 1/t).
    const double smin = std::log(t);
    const double gmin = t - 1.0 + t * std::log1p(1.0 / t);
    EXPECT_NEAR(duality_gap(smin, t), gmin, 1e-12);
    EXPECT_GE(gmin, 0.0);
    EXPECT_LE(duality_gap(smin, t), duality_gap(smin + 1e-3, t));
    EXPECT_LE(duality_gap(smin, t), duality_gap(smin - 1e-3, t));
    EXPECT_THROW(duality_gap(-1.0, 1.0), DomainError);
}

TEST(DualityGap, NonnegativeOnSamples) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 100000; ++i) ASSERT_GE(duality_gap(u(rng), u(rng)), -1e-12);
}

TEST(Luxemburg, IndicatorClosedForm) {
    const auto v = unit_indicator(64, 192);
    const auto r = luxemburg_norm({v, 1.0 / 64});
    EXPECT_NEAR(r.norm, 1.0 / std::numbers::ln2, 1e-9);
    EXPECT_LE(std::abs(r.residual), 1e-10);
    // |E| = 1/2, height 3: beta = 3 / log(1 + 2)
    const auto w = unit_indicator(32, 32, 3.0);
    EXPECT_NEAR(luxemburg_norm({w, 1.0 / 64}).norm, 3.0 / std::log(3.0), 1e-9);
}

TEST(Luxemburg, ZeroAndInvalid) {
    const std::vector<double> z(16, 0.0);
    const auto r = luxemburg_norm({z, 0.1});
    EXPECT_EQ(r.norm, 0.0);
    EXPECT_EQ(r.residual, 0.0);
    std::vector<double> bad(16, 1.0);
    bad[3] = std::nan("");
    EXPECT_THROW(luxemburg_norm({bad, 0.1}), InputError);
    EXPECT_THROW(luxemburg_norm({z, 0.1}, 0.0), DomainError);
}

TEST(Luxemburg, MatchesIndependentOracle) {
    const auto grid = GridSpec::make(32);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto f = fixtures::random_smooth_field(grid, seed, 0.5);
        const std::vector<double> vals(f.values().begin(), f.values().end());
        const auto r = luxemburg_norm(f.as_measure());
        const double oracle = static_cast<double>(luxemburg_oracle(vals, grid.cell_measure()));
        EXPECT_NEAR(r.norm, oracle, 1e-9 * oracle) << "seed " << seed;
        EXPECT_LE(std::abs(r.residual), kDefaultLuxemburgTol);
    }
}

TEST(Luxemburg, HomogeneityAndTriangle) {
    const auto grid = GridSpec::make(32);
    const double tol = kDefaultLuxemburgTol;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto f = fixtures::random_smooth_field(grid, seed);
        const auto g = fixtures::random_smooth_field(grid, seed + 1000);
        const double nf = luxemburg_norm(f.as_measure()).norm;
        const double ng = luxemburg_norm(g.as_measure()).norm;
        const ScalarField f3 = 3.0 * f;
        EXPECT_NEAR(luxemburg_norm(f3.as_measure()).norm, 3.0 * nf, 10 * tol * 3.0 * nf);
        const ScalarField fg = f + g;
        EXPECT_LE(luxemburg_norm(fg.as_measure()).norm, nf + ng + 10 * tol);
    }
}

TEST(Embedding, IndicatorValues) {
    const auto v = unit_indicator(64, 64);
    const DiscreteFunction f{v, 1.0 / 64};
    const auto p1 = embedding_check(f, 1);
    EXPECT_NEAR(p1.lp_norm, 1.0, 1e-12);
    EXPECT_NEAR(p1.bound, 1.442695, 1e-6);
    const auto p2 = embedding_check(f, 2);
    EXPECT_NEAR(p2.lp_norm, 1.0, 1e-12);
    EXPECT_NEAR(p2.bound, std::sqrt(2.0) / std::numbers::ln2, 1e-9);
    EXPECT_NEAR(p2.bound, 2.0403, 1e-4);
    EXPECT_THROW(embedding_check(f, 0), DomainError);
    const std::vector<double> z(8, 0.0);
    EXPECT_THROW(embedding_check({z, 1.0}, 2), DomainError);
}

TEST(Embedding, RandomFields) {
    const auto grid = GridSpec::make(32);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto f = fixtures::random_smooth_field(grid, seed, 2.0);
        for (int p = 1; p <= 4; ++p) {
            const auto e = embedding_check(f.as_measure(), p);
            EXPECT_LE(e.lp_norm, e.bound + 1e-9);
        }
    }
}

TEST(LogInterpolation, IndicatorClosedForm) {
    const auto v = unit_indicator(64, 64);
    const DiscreteFunction f{v, 1.0 / 64};
    const double C = log_interpolation_constant();
    EXPECT_NEAR(C, 1.0 + 2.0 * std::numbers::ln2, 1e-15);
    const auto r = log_interpolation(f, f, C);
    EXPECT_NEAR(r.lhs, 1.0, 1e-12);
    // C * (1/log 2) * 1 * (log 2 + 0 + 1)
    const double expected = C / std::numbers::ln2 * (std::numbers::ln2 + 1.0);
    EXPECT_NEAR(r.rhs, expected, 1e-8);
    EXPECT_NEAR(r.rhs, 5.829, 1e-3);
    EXPECT_LE(r.lhs, r.rhs);
}

TEST(LogInterpolation, ZeroG) {
    const auto v = unit_indicator(8, 8);
    const std::vector<double> z(16, 0.0);
    const auto r = log_interpolation({v, 0.125}, {z, 0.125}, log_interpolation_constant());
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.rhs, 0.0);
}

TEST(LogInterpolation, FuzzedPairs) {
    const auto grid = GridSpec::make(32);
    const double C = log_interpolation_constant();
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> scale(0.01, 20.0);
    for (int i = 0; i < 200; ++i) {
        const auto f = fixtures::random_smooth_field(grid, rng(), scale(rng));
        const auto g = fixtures::random_smooth_field(grid, rng(), scale(rng));
        const auto r = log_interpolation(f.as_measure(), g.as_measure(), C);
        ASSERT_LE(r.lhs, r.rhs) << "pair " << i;
    }
}

TEST(LogInterpolation, RejectsNonFinite) {
    std::vector<double> g(16, 1.0);
    g[0] = std::numeric_limits<double>::infinity();
    const std::vector<double> f(16, 1.0);
    EXPECT_THROW(log_interpolation({f, 0.1}, {g, 0.1}, 1.0), InputError);
}
