#include "ovw/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ovw/errors.hpp"
#include "ovw/field_ops.hpp"

namespace ovw {

namespace {

using nlohmann::json;

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

VectorField2 make_initial(const SweepConfig& cfg, const GridSpec& grid) {
    if (cfg.initial_data == InitialDataKind::taylor_green) return taylor_green(0.0, 0.0, grid);
    return band_limited_random(grid, cfg.random);
}

struct ViscousRun {
    Trajectory traj;
    double wall_time = 0.0;
};

ViscousRun timed_run(const VectorField2& u0, const SolverConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    ViscousRun r;
    try {
        r.traj = run(u0, cfg);
    } catch (const SolverAbort& e) {
        std::ostringstream msg;
        msg << "nu=" << cfg.nu << ": " << e.what();
        throw SolverAbort(msg.str());
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

void SweepConfig::validate() const {
    GridSpec::make(n);
    if (!(t_end > 0.0)) throw InputError("sweep: t_end must be positive");
    if (!(sigma > 0.0)) throw InputError("sweep: sigma must be positive");
    if (nu_list.empty()) throw InputError("sweep: nu_list is empty");
    for (std::size_t i = 0; i < nu_list.size(); ++i) {
        if (!(nu_list[i] > 0.0) || !(nu_list[i] < 1.0)) throw InputError("sweep: every nu must lie in (0, 1)");
        if (i > 0 && !(nu_list[i] < nu_list[i - 1])) throw InputError("sweep: nu_list must be strictly decreasing");
    }
    if (windows < 1) throw InputError("sweep: windows must be >= 1");
}

SweepConfig parse_sweep_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("sweep config: ") + e.what());
    }
    SweepConfig cfg;
    try {
        read_opt(j, "grid", cfg.n);
        read_opt(j, "t_end", cfg.t_end);
        read_opt(j, "sigma", cfg.sigma);
        read_opt(j, "nu_list", cfg.nu_list);
        read_opt(j, "dt", cfg.dt);
        read_opt(j, "windows", cfg.windows);
        if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("initial_data")) {
            const auto& d = j.at("initial_data");
            const std::string kind = d.is_string() ? d.get<std::string>() : d.value("kind", "taylor_green");
            if (kind == "taylor_green") {
                cfg.initial_data = InitialDataKind::taylor_green;
            } else if (kind == "band_limited_random") {
                cfg.initial_data = InitialDataKind::band_limited_random;
                if (d.is_object()) {
                    read_opt(d, "seed", cfg.random.seed);
                    read_opt(d, "modes", cfg.random.max_mode);
                    read_opt(d, "envelope_width", cfg.random.envelope_width);
                    read_opt(d, "l2_norm", cfg.random.l2_norm);
                }
            } else {
                throw InputError("sweep config: unknown initial_data kind '" + kind + "'");
            }
        }
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            read_opt(t, "inequality", cfg.tol.inequality_rel);
            read_opt(t, "energy", cfg.tol.energy_rel);
            read_opt(t, "exact", cfg.tol.exact_rel);
            read_opt(t, "tail", cfg.tol.tail);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("sweep config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sweep_config(ss.str());
}

RateFit fit_rate(const std::vector<SweepRecord>& records) {
    if (records.size() < 3) throw InputError("fit_rate: needs at least three records");
    RateFit fit;
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& r : records) {
        if (!(r.sup_rel_dist > 0.0)) {
            fit.note = "zero distance in the records; fit skipped";
            return fit;
        }
        x.push_back(std::log(r.nu));
        y.push_back(std::log(r.sup_rel_dist));
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        fit.note = "all viscosities equal; fit skipped";
        return fit;
    }
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.ok = true;
    return fit;
}

bool SweepResult::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult res;
    res.config = cfg;
    const GridSpec grid = GridSpec::make(cfg.n);
    const VectorField2 u0 = make_initial(cfg, grid);

    SolverConfig base;
    base.grid = grid;
    base.t_end = cfg.t_end;
    base.sigma = cfg.sigma;
    base.tail_threshold = cfg.tol.tail;
    base.output_stride = 1;
    if (cfg.dt > 0.0) {
        res.dt = cfg.dt;
    } else {
        // Shared step so every trajectory has the same snapshot times; 0.8 leaves room for growth of |u|.
        const double dt_cfl = 0.8 * cfl_dt(u0, base);
        res.dt = cfg.t_end / std::ceil(cfg.t_end / dt_cfl);
    }
    base.dt = res.dt;

    SolverConfig euler_cfg = base;
    euler_cfg.nu = 0.0;
    euler_cfg.record_lexp = true;
    auto euler_future = std::async(std::launch::async, [&] { return timed_run(u0, euler_cfg); });
    std::vector<std::future<ViscousRun>> futures;
    for (double nu : cfg.nu_list) {
        SolverConfig c = base;
        c.nu = nu;
        c.record_lexp = false;
        futures.push_back(std::async(std::launch::async, [u0, c] { return timed_run(u0, c); }));
    }
    const ViscousRun euler = euler_future.get();
    std::vector<ViscousRun> runs;
    for (auto& fut : futures) runs.push_back(fut.get());

    const Trajectory& U = euler.traj;
    res.initial_energy = U.ledger.front().energy;
    const double tol_ineq = cfg.tol.inequality_rel * (1.0 + res.initial_energy);
    const double tol_energy = cfg.tol.energy_rel * res.initial_energy;

    // Hypothesis profiles on the snapshot mesh.
    const auto times = U.times();
    res.f.times = res.g.times = res.h.times = times;
    for (std::size_t k = 0; k < times.size(); ++k) {
        res.f.values.push_back(U.ledger[k].lexp_sym_gradient);
        double g_nu = 0.0;
        double h_val = U.ledger[k].l2psigma_velocity;
        for (const auto& r : runs) {
            g_nu = std::max(g_nu, std::sqrt(r.traj.nu) * r.traj.ledger[k].l2_gradient);
            h_val = std::max(h_val, r.traj.ledger[k].l2psigma_velocity);
        }
        res.g.values.push_back(U.ledger[k].l2_sym_gradient + g_nu);
        res.h.values.push_back(h_val);
    }

    bool viscous_ok = true;
    bool energy_ok = true;
    bool exact_ok = true;
    const std::size_t last = times.size() - 1;
    const std::size_t windows = std::min<std::size_t>(static_cast<std::size_t>(cfg.windows), last);
    for (const auto& run : runs) {
        const Trajectory& u = run.traj;
        SweepRecord rec;
        rec.nu = u.nu;
        rec.wall_time = run.wall_time;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const VectorField2 diff = u.snapshots[k].velocity - U.snapshots[k].velocity;
            rec.sup_rel_dist = std::max(rec.sup_rel_dist, std::sqrt(dot_integral(diff, diff)));
            rec.sup_sqrt_nu_grad = std::max(rec.sup_sqrt_nu_grad, std::sqrt(u.nu) * u.ledger[k].l2_gradient);
            rec.sup_l2psigma = std::max(rec.sup_l2psigma, u.ledger[k].l2psigma_velocity);
        }
        rec.min_slack = std::numeric_limits<double>::infinity();
        for (std::size_t w = 0; w < windows; ++w) {
            const std::size_t i1 = last * w / windows;
            const std::size_t i2 = last * (w + 1) / windows;
            auto r = viscous_key_inequality(u, U, times[i1], times[i2]);
            rec.min_slack = std::min(rec.min_slack, r.slack);
            res.inequalities.push_back(r);
        }
        auto whole = viscous_key_inequality(u, U, 0.0, times[last]);
        rec.min_slack = std::min(rec.min_slack, whole.slack);
        res.inequalities.push_back(whole);
        viscous_ok = viscous_ok && rec.min_slack >= -tol_ineq;

        const auto energy = energy_inequality_check(u, tol_energy);
        rec.energy_min_slack = energy.min_slack;
        energy_ok = energy_ok && energy.ok;

        if (cfg.initial_data == InitialDataKind::taylor_green) {
            rec.exact_dist = -std::expm1(-2.0 * u.nu * cfg.t_end) * std::numbers::pi * std::numbers::sqrt2;
            exact_ok = exact_ok && std::abs(rec.sup_rel_dist - rec.exact_dist) <= cfg.tol.exact_rel * rec.exact_dist;
        }
        res.records.push_back(rec);
    }
    std::sort(res.records.begin(), res.records.end(), [](const auto& a, const auto& b) { return a.nu > b.nu; });

    res.checks["viscous_key_inequality"] = viscous_ok;
    res.checks["energy_inequality"] = energy_ok;
    if (cfg.initial_data == InitialDataKind::taylor_green) {
        res.checks["exact_distance"] = exact_ok;
        bool monotone = true;
        for (std::size_t i = 1; i < res.records.size(); ++i) {
            monotone = monotone && res.records[i].sup_rel_dist < res.records[i - 1].sup_rel_dist;
        }
        res.checks["monotone_distance"] = monotone;
    }

    gronwall::CertifyOptions opts;
    opts.refine_mesh = true;
    try {
        res.certificate = gronwall::certify(res.f, res.g, res.h, cfg.sigma, cfg.t_end, opts);
    } catch (const CertificationFailure& e) {
        res.certificate_failure = e.what();
    }
    res.checks["certificate"] = res.certificate.has_value();

    if (res.records.size() >= 3) {
        res.fit = fit_rate(res.records);
    } else {
        res.fit.note = "fewer than three records; fit skipped";
    }

    if (res.certificate) {
        const auto& c = *res.certificate;
        bool dominated = true;
        for (auto& rec : res.records) {
            rec.log10_certified_bound = c.log_bound(rec.nu) / std::numbers::ln10;
            rec.certified_bound = c.bound(rec.nu);
            rec.covered = c.covers(rec.nu);
            if (rec.covered) dominated = dominated && rec.log10_certified_bound >= std::log10(rec.sup_rel_dist);
        }
        res.checks["domination"] = dominated;
        if (res.fit.ok) res.checks["rate_consistency"] = res.fit.exponent >= std::exp(-c.log_big_m);
    }
    return res;
}

}  // namespace ovw
