// ovw: command-line front end for the checks and the viscosity sweep.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ovw/errors.hpp"
#include "ovw/field_ops.hpp"
#include "ovw/gronwall.hpp"
#include "ovw/initial_data.hpp"
#include "ovw/mollifier.hpp"
#include "ovw/orlicz.hpp"
#include "ovw/relative_energy.hpp"
#include "ovw/report.hpp"
#include "ovw/solver.hpp"
#include "ovw/sweep.hpp"
#include "ovw/trajectory_io.hpp"

namespace fs = std::filesystem;
using namespace ovw;

namespace {

struct Common {
    std::string config;
    std::string out = "out";
    std::uint64_t seed = 1;
    int grid = 64;
    double tol = -1.0;  // < 0: command default
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    cmd->add_option("--grid", c.grid, "Grid points per axis (power of two)")->capture_default_str();
    cmd->add_option("--tol", c.tol, "Tolerance override");
}

double tol_or(const Common& c, double fallback) { return c.tol >= 0.0 ? c.tol : fallback; }

int finish(const Common& c, const std::map<std::string, bool>& checks) {
    fs::create_directories(c.out);
    write_summary_json(fs::path(c.out) / "summary.json", checks);
    bool all = true;
    for (const auto& [name, ok] : checks) {
        std::cout << (ok ? "pass  " : "FAIL  ") << name << '\n';
        all = all && ok;
    }
    return all ? 0 : 1;
}

ScalarField random_scalar(const GridSpec& g, std::uint64_t seed, double scale) {
    RandomFieldSpec s;
    s.seed = seed;
    s.max_mode = std::min(6, g.dealias_cutoff);
    s.l2_norm = scale * 2.0 * std::numbers::pi;
    return band_limited_random(g, s).u;
}

int orlicz_check(const Common& c, int samples) {
    const double tol = tol_or(c, orlicz::kDefaultLuxemburgTol);
    std::map<std::string, bool> checks;
    std::mt19937_64 rng(c.seed);

    std::uniform_real_distribution<double> d(0.0, 50.0);
    double worst_gap = INFINITY;
    for (int i = 0; i < samples; ++i) worst_gap = std::min(worst_gap, orlicz::duality_gap(d(rng), d(rng)));
    checks["duality_gap"] = worst_gap >= -1e-12;
    std::cout << "min duality gap " << worst_gap << '\n';

    const auto g = GridSpec::make(c.grid);
    std::uniform_real_distribution<double> scale(0.05, 3.0);
    double worst_res = 0.0;
    int embed_violations = 0;
    int interp_violations = 0;
    for (int i = 0; i < 100; ++i) {
        const auto f = random_scalar(g, rng(), scale(rng));
        const auto h = random_scalar(g, rng(), scale(rng));
        const auto lux = orlicz::luxemburg_norm(f.as_measure(), tol);
        worst_res = std::max(worst_res, std::abs(orlicz::modular(f.as_measure(), lux.norm) - 1.0));
        for (int p = 1; p <= 4; ++p) {
            const auto e = orlicz::embedding_check(f.as_measure(), p, tol);
            if (e.lp_norm > e.bound) ++embed_violations;
        }
        const auto r = orlicz::log_interpolation(f.as_measure(), h.as_measure(), orlicz::log_interpolation_constant(), tol);
        if (r.lhs > r.rhs) ++interp_violations;
    }
    checks["luxemburg_residual"] = worst_res <= tol;
    checks["exp_embedding"] = embed_violations == 0;
    checks["log_interpolation"] = interp_violations == 0;
    std::cout << "max modular residual " << worst_res << ", embedding violations " << embed_violations
              << ", interpolation violations " << interp_violations << '\n';
    return finish(c, checks);
}

int identity_check(const Common& c, int fields) {
    const double tol = tol_or(c, 1e-9);
    const auto g = GridSpec::make(c.grid);
    const auto fine = GridSpec::make(2 * c.grid);
    std::map<std::string, bool> checks;
    const double tg = identity_residual(taylor_green(0.0, 0.0, g));
    std::cout << "taylor-green residual " << tg << '\n';
    double worst = 0.0;
    double worst_ratio = INFINITY;
    for (int i = 0; i < fields; ++i) {
        RandomFieldSpec s;
        s.seed = c.seed + static_cast<std::uint64_t>(i);
        s.max_mode = g.dealias_cutoff;
        s.envelope_width = 3.0 * c.grid / 64.0;
        const double r = identity_residual(band_limited_random(g, s));
        const double rf = identity_residual(band_limited_random(fine, s));
        worst = std::max(worst, r);
        worst_ratio = std::min(worst_ratio, r / rf);
    }
    std::cout << "random fields: max residual " << worst << ", min refinement ratio " << worst_ratio << '\n';
    checks["taylor_green_residual"] = tg <= tol;
    checks["random_residual"] = worst <= tol;
    checks["refinement_ratio"] = worst_ratio >= 4.0;
    return finish(c, checks);
}

int energy_balance(const Common& c, double t_end, bool random_data) {
    const double tol = tol_or(c, 1e-7);
    SolverConfig cfg;
    cfg.grid = GridSpec::make(c.grid);
    cfg.nu = 0.0;
    cfg.t_end = t_end;
    cfg.record_lexp = false;
    VectorField2 u0 = taylor_green(0.0, 0.0, cfg.grid);
    if (random_data) {
        RandomFieldSpec s;
        s.seed = c.seed;
        s.max_mode = 4;
        s.envelope_width = 1.5;
        s.l2_norm = 2.0;
        u0 = band_limited_random(cfg.grid, s);
    }
    std::map<std::string, bool> checks;
    const auto U = run(u0, cfg);
    const auto cons = energy_conservation_check(U);
    std::cout << "max relative energy drift " << cons.max_relative_drift << '\n';
    checks["energy_conservation"] = cons.max_relative_drift <= tol;

    std::vector<InequalityResidual> rows;
    double prev = INFINITY;
    double prev_comm = INFINITY;
    bool monotone = true;
    bool comm_monotone = true;
    const double dt0 = 0.5 * cfl_dt(U.snapshots.front().velocity, cfg);
    double dt = dt0;
    for (double eps : {0.4, 0.2, 0.1}) {
        auto rc = cfg;
        rc.dt = dt;
        const auto Ue = run(u0, rc);
        auto r = mollified_energy_balance(Ue, {eps}, t_end);
        const double comm = commutator(u0, {eps}).second.norm_1ps2;
        std::cout << "eps " << eps << ": balance residual " << std::abs(r.slack) << ", commutator " << comm << '\n';
        monotone = monotone && std::abs(r.slack) < prev;
        comm_monotone = comm_monotone && comm < prev_comm;
        prev = std::abs(r.slack);
        prev_comm = comm;
        rows.push_back(std::move(r));
        dt *= 0.5;
    }
    checks["mollified_balance_monotone"] = monotone;
    checks["commutator_monotone"] = comm_monotone;
    fs::create_directories(c.out);
    write_inequality_report(fs::path(c.out) / "inequality_report.csv", rows);
    io::write_ledger_csv(fs::path(c.out) / "ledger.csv", U.ledger);
    return finish(c, checks);
}

int visc_sweep(const Common& c, bool grid_set, bool seed_set, bool out_set) {
    if (c.config.empty()) throw InputError("visc-sweep needs --config");
    SweepConfig cfg = load_sweep_config(c.config);
    if (grid_set) cfg.n = c.grid;
    if (seed_set) cfg.random.seed = c.seed;
    if (out_set) cfg.output_dir = c.out;
    if (c.tol >= 0.0) cfg.tol.inequality_rel = c.tol;
    cfg.validate();
    const auto res = run_sweep(cfg);
    write_report(res, cfg.output_dir);
    for (const auto& r : res.records) {
        std::cout << "nu " << r.nu << "  sup dist " << r.sup_rel_dist << "  min slack " << r.min_slack
                  << "  wall " << r.wall_time << " s\n";
    }
    if (res.fit.ok) std::cout << "fitted exponent " << res.fit.exponent << '\n';
    if (res.certificate) {
        std::cout << "certificate: N " << res.certificate->n_windows << ", log10 M "
                  << res.certificate->log_big_m / std::numbers::ln10 << ", nu_bar " << res.certificate->nu_bar << '\n';
    } else {
        std::cout << "certificate failed: " << res.certificate_failure << '\n';
    }
    Common where = c;
    where.out = cfg.output_dir.string();
    return finish(where, res.checks);
}

gronwall::TimeProfile column(const std::vector<std::vector<double>>& rows, std::size_t k) {
    gronwall::TimeProfile p;
    for (const auto& r : rows) {
        p.times.push_back(r[0]);
        p.values.push_back(r[k]);
    }
    return p;
}

int certify_rate(const Common& c, const std::string& profiles, double sigma) {
    std::ifstream in(profiles);
    if (!in) throw IoError("cannot open " + profiles);
    std::string line;
    std::getline(in, line);
    if (line.rfind("t,f,g,h", 0) != 0) throw InputError(profiles + ": expected header t,f,g,h");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::vector<double> row;
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != 4) throw InputError(profiles + ": expected four columns");
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw InputError(profiles + ": need at least two rows");
    const double T = rows.back()[0];
    gronwall::CertifyOptions opts;
    opts.refine_mesh = true;
    std::map<std::string, bool> checks;
    fs::create_directories(c.out);
    try {
        const auto cert = gronwall::certify(column(rows, 1), column(rows, 2), column(rows, 3), sigma, T, opts);
        gronwall::write_certificate_json(fs::path(c.out) / "certificate.json", cert);
        std::cout << "theta " << cert.theta << ", t0 " << cert.t0 << ", N " << cert.n_windows << ", log10 M "
                  << cert.log_big_m / std::numbers::ln10 << ", nu_bar " << cert.nu_bar << '\n';
        checks["certificate"] = true;
    } catch (const CertificationFailure& e) {
        std::cout << "certification failed: " << e.what() << '\n';
        checks["certificate"] = false;
    }
    return finish(c, checks);
}

int report(const Common& c) {
    const fs::path dir = c.out;
    std::ifstream summary(dir / "summary.json");
    if (!summary) throw IoError("cannot open " + (dir / "summary.json").string());
    const auto j = nlohmann::json::parse(summary);
    std::ifstream sweep(dir / "sweep.csv");
    if (sweep) {
        std::string line;
        while (std::getline(sweep, line)) std::cout << line << '\n';
    }
    bool passed = j.value("passed", false);
    for (const auto& [name, state] : j.at("checks").items()) {
        std::cout << state.get<std::string>() << "  " << name << '\n';
    }
    return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vanishing-viscosity checks for 2D incompressible flow"};
    app.require_subcommand(1);
    Common common;

    int samples = 1'000'000;
    auto* orl = app.add_subcommand("orlicz-check", "Duality, Luxemburg norm, embedding and interpolation checks");
    add_common(orl, common);
    orl->add_option("--samples", samples, "Duality samples")->capture_default_str();

    int fields = 20;
    auto* ident = app.add_subcommand("identity-check", "Residual of the symmetric-gradient identity");
    add_common(ident, common);
    ident->add_option("--fields", fields, "Random fields")->capture_default_str();

    double t_end = 0.5;
    bool random_data = false;
    auto* bal = app.add_subcommand("energy-balance", "Euler energy conservation and mollified balance");
    add_common(bal, common);
    bal->add_option("--t-end", t_end, "Final time")->capture_default_str();
    bal->add_flag("--random", random_data, "Band-limited random data instead of Taylor-Green");

    auto* sweep = app.add_subcommand("visc-sweep", "Viscosity sweep with rate certificate");
    add_common(sweep, common);
    sweep->add_option("--config", common.config, "Sweep configuration (JSON)")->required();

    std::string profiles;
    double sigma = 2.0;
    auto* cert = app.add_subcommand("certify-rate", "Certificate from f, g, h profiles");
    add_common(cert, common);
    cert->add_option("--profiles", profiles, "CSV with header t,f,g,h")->required();
    cert->add_option("--sigma", sigma, "Integrability gain sigma")->capture_default_str();

    auto* rep = app.add_subcommand("report", "Print sweep.csv and summary.json from --out");
    add_common(rep, common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*orl) return orlicz_check(common, samples);
        if (*ident) return identity_check(common, fields);
        if (*bal) return energy_balance(common, t_end, random_data);
        if (*sweep) {
            return visc_sweep(common, sweep->count("--grid") > 0, sweep->count("--seed") > 0,
                              sweep->count("--out") > 0);
        }
        if (*cert) return certify_rate(common, profiles, sigma);
        if (*rep) return report(common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
