#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "ovw/errors.hpp"
#include "ovw/field_ops.hpp"
#include "ovw/initial_data.hpp"
#include "ovw/solver.hpp"
#include "ovw/trajectory_io.hpp"
#include "support.hpp"

using namespace ovw;
constexpr double kPi = std::numbers::pi;

namespace {

SolverConfig config(int n, double nu, double t_end, double dt = 0.0) {
    SolverConfig c;
    c.grid = GridSpec::make(n);
    c.nu = nu;
    c.t_end = t_end;
    c.dt = dt;
    c.record_lexp = false;
    return c;
}

/// Smooth non-Taylor-Green data: the advection term does not vanish.
VectorField2 smooth_data(const GridSpec& g) {
    RandomFieldSpec s;
    s.seed = 21;
    s.max_mode = 4;
    s.envelope_width = 1.5;
    s.l2_norm = 2.0;
    return band_limited_random(g, s);
}

double sup_error_vs_taylor_green(const Trajectory& traj) {
    double worst = 0.0;
    for (const auto& s : traj.snapshots) {
        const auto ex = taylor_green(traj.nu, s.t, traj.grid);
        worst = std::max(worst, lp_norm(s.velocity - ex, 2.0));
    }
    return worst;
}

}  // namespace

TEST(TaylorGreen, Oracle) {
    const auto g = GridSpec::make(32);
    const auto u0 = taylor_green(0.3, 0.0, g);
    EXPECT_LE((u0.u - ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); })).max_abs(),
              1e-15);
    EXPECT_NEAR(lp_norm(taylor_green(1e-3, 1.0, g), 2.0), std::exp(-0.002) * kPi * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(lp_norm(taylor_green(1e-3, 1.0, g), 2.0), 4.434006, 1e-6);
    const auto a = taylor_green(0.0, 5.0, g);
    EXPECT_EQ((a.u - u0.u).max_abs(), 0.0);
    // Vorticity dv/dx - du/dy of the velocity field is +2 sin x sin y.
    EXPECT_LE((curl(u0) - taylor_green_vorticity(0.0, 0.0, g)).max_abs(), 1e-12);
}

TEST(Step, RestStateAndExactDecay) {
    const auto c = config(32, 0.01, 1.0);
    FlowSolver solver(c);
    const auto rest = solver.initial_state(VectorField2::zeros(c.grid));
    const auto next = solver.step(rest, 1e-3);
    EXPECT_EQ(next.omega.max_abs(), 0.0);

    const auto s0 = solver.initial_state(taylor_green(0.0, 0.0, c.grid));
    const auto s1 = solver.step(s0, 1e-3);
    const ScalarField expected = std::exp(-2.0 * 0.01 * 1e-3) * s0.omega;
    EXPECT_LE((s1.omega - expected).max_abs(), 1e-10);
}

TEST(Step, RejectsCflViolationAndDivergentData) {
    const auto c = config(32, 0.0, 1.0);
    FlowSolver solver(c);
    const auto s0 = solver.initial_state(taylor_green(0.0, 0.0, c.grid));
    EXPECT_THROW(solver.step(s0, 1.0), SolverAbort);
    const VectorField2 D{ScalarField::sample(c.grid, [](double x, double) { return std::sin(x); }), ScalarField(c.grid)};
    EXPECT_THROW(solver.initial_state(D), InputError);
}

TEST(Step, EulerEnstrophyConserved) {
    const auto c = config(64, 0.0, 1.0);
    FlowSolver solver(c);
    auto s = solver.initial_state(smooth_data(c.grid));
    const double z0 = lp_norm(s.omega, 2.0);
    const double mean_u = s.velocity.u.mean();
    const double dt = 0.1 * cfl_dt(s.velocity, c);
    for (int i = 0; i < 100; ++i) s = solver.step(s, dt);
    EXPECT_NEAR(lp_norm(s.omega, 2.0), z0, 1e-8 * z0);
    EXPECT_NEAR(s.velocity.u.mean(), mean_u, 1e-14);
    EXPECT_LE(max_divergence(s.velocity), 1e-10 * lp_norm(s.velocity, 2.0));
}

TEST(Run, TaylorGreenViscousMatchesExact) {
    const auto traj = run(taylor_green(0.0, 0.0, GridSpec::make(64)), config(64, 1e-3, 1.0));
    EXPECT_LE(sup_error_vs_taylor_green(traj), 1e-8);
    EXPECT_EQ(traj.snapshots.back().t, 1.0);
    for (std::size_t k = 1; k < traj.ledger.size(); ++k) EXPECT_GT(traj.ledger[k].t, traj.ledger[k - 1].t);
}

TEST(Run, TaylorGreenEulerIsSteady) {
    const auto g = GridSpec::make(64);
    const auto u0 = taylor_green(0.0, 0.0, g);
    const auto traj = run(u0, config(64, 0.0, 1.0));
    double worst = 0.0;
    for (const auto& s : traj.snapshots) worst = std::max(worst, lp_norm(s.velocity - u0, 2.0));
    EXPECT_LE(worst, 1e-8);
}

TEST(Run, EnergyBalanceClosedForm) {
    const double nu = 1e-2;
    const double T = 1.0;
    const auto traj = run(taylor_green(0.0, 0.0, GridSpec::make(32)), config(32, nu, T, 1e-3));
    const auto& first = traj.ledger.front();
    const auto& last = traj.ledger.back();
    // nu int_0^T ||grad u||^2 = 2 nu int_0^T e^{-4 nu s} 2 pi^2 ds
    const double dissipation = kPi * kPi * -std::expm1(-4.0 * nu * T);
    EXPECT_NEAR(last.cumulative_dissipation, dissipation, 1e-9 * dissipation);
    EXPECT_NEAR(last.energy + last.cumulative_dissipation, first.energy, 1e-9 * first.energy);
}

TEST(Run, SpatialAccuracy) {
    // Reference: n = 64; compare n = 16 and n = 32 at a fixed step on the common coarse samples.
    const double T = 0.5;
    const double dt = 0.01;
    auto final_field = [&](int n) {
        const auto g = GridSpec::make(n);
        RandomFieldSpec s;
        s.seed = 21;
        s.max_mode = 2;
        s.envelope_width = 1.5;
        s.l2_norm = 0.5;
        return run(band_limited_random(g, s), config(n, 2e-2, T, dt)).snapshots.back().velocity;
    };
    const auto ref = final_field(64);
    auto err = [&](int n) {
        const auto f = final_field(n);
        const int stride = 64 / n;
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(f.u(i, j) - ref.u(i * stride, j * stride)));
        return worst;
    };
    const double e16 = err(16);
    const double e32 = err(32);
    EXPECT_GT(e16 / e32, 1e4) << "e16=" << e16 << " e32=" << e32;
}

TEST(Run, TemporalOrderFour) {
    const auto g = GridSpec::make(32);
    const double T = 0.5;
    auto final_u = [&](double dt) { return run(smooth_data(g), config(32, 1e-2, T, dt)).snapshots.back().velocity; };
    const auto ref = final_u(0.05 / 16);
    const double e1 = lp_norm(final_u(0.05) - ref, 2.0);
    const double e2 = lp_norm(final_u(0.025) - ref, 2.0);
    const double ratio = e1 / e2;
    EXPECT_GE(ratio, 12.0);
    EXPECT_LE(ratio, 20.0);
}

TEST(Run, LerayHopfInequalityAndAdmissibility) {
    const auto g = GridSpec::make(32);
    const auto traj = run(smooth_data(g), config(32, 1e-2, 0.5));
    const double e0 = traj.ledger.front().energy;
    const auto ineq = energy_inequality_check(traj, 1e-9 * e0);
    EXPECT_TRUE(ineq.ok) << ineq.min_slack;
    EXPECT_TRUE(admissibility_check(traj, 1e-9 * e0).ok);

    const auto tg = run(taylor_green(0.0, 0.0, g), config(32, 1e-2, 0.5));
    EXPECT_TRUE(admissibility_check(tg, 0.0).ok);

    Trajectory bad = tg;
    bad.ledger.back().energy = 1.1 * bad.ledger.front().energy;
    const auto rep = admissibility_check(bad, 1e-9);
    EXPECT_FALSE(rep.ok);
    ASSERT_EQ(rep.flagged.size(), 1u);
    EXPECT_EQ(rep.flagged[0], bad.ledger.size() - 1);
}

TEST(TrajectoryIo, WritesSnapshotsAndLedger) {
    const auto g = GridSpec::make(16);
    auto c = config(16, 1e-2, 0.1, 0.05);
    const auto traj = run(taylor_green(0.0, 0.0, g), c);
    const auto dir = std::filesystem::temp_directory_path() / "ovw_traj_test";
    std::filesystem::remove_all(dir);
    io::write_trajectory(dir, traj);
    EXPECT_TRUE(std::filesystem::exists(dir / "t_000000.bin"));
    EXPECT_TRUE(std::filesystem::exists(dir / "t_000002.bin"));
    const auto ledger = io::read_ledger_csv(dir / "ledger.csv");
    ASSERT_EQ(ledger.size(), traj.ledger.size());
    EXPECT_EQ(ledger.back().energy, traj.ledger.back().energy);
    std::filesystem::remove_all(dir);
}
