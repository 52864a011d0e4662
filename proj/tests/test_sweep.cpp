#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ovw/errors.hpp"
#include "ovw/report.hpp"
#include "ovw/sweep.hpp"

using namespace ovw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("ovw_sweep_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(SweepConfig, Parse) {
    const auto cfg = parse_sweep_config(R"({
        "grid": 32, "t_end": 0.5, "sigma": 4, "nu_list": [0.1, 0.01, 0.001],
        "initial_data": {"kind": "band_limited_random", "seed": 9, "modes": 5},
        "tolerances": {"inequality": 1e-7}, "output_dir": "runs/a"})");
    EXPECT_EQ(cfg.n, 32);
    EXPECT_DOUBLE_EQ(cfg.t_end, 0.5);
    EXPECT_DOUBLE_EQ(cfg.sigma, 4.0);
    ASSERT_EQ(cfg.nu_list.size(), 3u);
    EXPECT_EQ(cfg.initial_data, InitialDataKind::band_limited_random);
    EXPECT_EQ(cfg.random.seed, 9u);
    EXPECT_EQ(cfg.random.max_mode, 5);
    EXPECT_DOUBLE_EQ(cfg.tol.inequality_rel, 1e-7);
    EXPECT_DOUBLE_EQ(cfg.tol.energy_rel, 1e-9);
    EXPECT_EQ(cfg.output_dir, fs::path("runs/a"));

    const auto tg = parse_sweep_config(R"({"nu_list": [0.1], "initial_data": "taylor_green"})");
    EXPECT_EQ(tg.initial_data, InitialDataKind::taylor_green);
    EXPECT_EQ(tg.n, 64);
}

TEST(SweepConfig, Rejects) {
    EXPECT_THROW(parse_sweep_config("{"), InputError);
    EXPECT_THROW(parse_sweep_config(R"({"nu_list": []})"), InputError);
    EXPECT_THROW(parse_sweep_config(R"({})"), InputError);
    EXPECT_THROW(parse_sweep_config(R"({"nu_list": [0.01, 0.1]})"), InputError);
    EXPECT_THROW(parse_sweep_config(R"({"nu_list": [1.5]})"), InputError);
    EXPECT_THROW(parse_sweep_config(R"({"nu_list": [0.1], "grid": 30})"), InputError);
    EXPECT_THROW(parse_sweep_config(R"({"nu_list": [0.1], "grid": "big"})"), InputError);
    EXPECT_THROW(parse_sweep_config(R"({"nu_list": [0.1], "initial_data": "vortex"})"), InputError);
    EXPECT_THROW(load_sweep_config("/nonexistent/config.json"), IoError);
}

TEST(FitRate, RecoversExponent) {
    std::vector<SweepRecord> recs;
    for (double nu : {1e-1, 1e-2, 1e-3, 1e-4}) {
        SweepRecord r;
        r.nu = nu;
        r.sup_rel_dist = 3.0 * std::sqrt(nu);
        recs.push_back(r);
    }
    const auto fit = fit_rate(recs);
    ASSERT_TRUE(fit.ok);
    EXPECT_NEAR(fit.exponent, 0.5, 1e-12);
    EXPECT_NEAR(fit.prefactor, 3.0, 1e-10);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    recs.pop_back();
    recs.pop_back();
    EXPECT_THROW(fit_rate(recs), InputError);
}

TEST(Pow10, Formatting) {
    EXPECT_EQ(format_pow10(2.0), "100");
    EXPECT_NE(format_pow10(1234.5).find("e+1234"), std::string::npos);
}

TEST(Sweep, TaylorGreenSmall) {
    SweepConfig cfg;
    cfg.n = 16;
    cfg.t_end = 0.5;
    cfg.nu_list = {1e-1, 1e-2, 1e-3};
    cfg.windows = 4;
    const auto res = run_sweep(cfg);
    ASSERT_EQ(res.records.size(), 3u);
    for (const auto& r : res.records) {
        const double a = std::exp(-2.0 * r.nu * cfg.t_end);
        const double exact = std::numbers::pi * std::sqrt(2.0) * (1.0 - a);
        EXPECT_NEAR(r.sup_rel_dist, exact, 1e-6 * exact);
        EXPECT_GE(r.min_slack, -1e-8 * (1.0 + res.initial_energy));
    }
    EXPECT_NEAR(res.fit.exponent, 1.0, 0.05);
    EXPECT_TRUE(res.checks.at("exact_distance"));
    EXPECT_TRUE(res.checks.at("viscous_key_inequality"));
    EXPECT_TRUE(res.checks.at("energy_inequality"));
}

TEST(Sweep, ReportsAreDeterministic) {
    SweepConfig cfg;
    cfg.n = 16;
    cfg.t_end = 0.25;
    cfg.nu_list = {1e-1, 1e-2, 1e-3};
    cfg.windows = 2;
    const auto a = scratch("a");
    const auto b = scratch("b");
    write_report(run_sweep(cfg), a);
    write_report(run_sweep(cfg), b);
    for (const char* name : {"sweep.csv", "inequality_report.csv", "summary.json", "certificate.json"}) {
        ASSERT_TRUE(fs::exists(a / name)) << name;
        EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
    }
    EXPECT_EQ(slurp(a / "sweep.csv").substr(0, 42), "nu,sup_rel_dist,certified_bound,min_slack\n");
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Sweep, UnwritableOutput) {
    SweepConfig cfg;
    cfg.n = 16;
    cfg.t_end = 0.1;
    cfg.nu_list = {1e-1, 1e-2, 1e-3};
    const auto res = run_sweep(cfg);
    const auto file = scratch("blocker");
    std::ofstream(file) << "x";
    EXPECT_THROW(write_report(res, file / "sub"), IoError);
    fs::remove(file);
}
