#include "ovw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ovw/errors.hpp"
#include "ovw/field_ops.hpp"

namespace ovw {

using spectral::Complex;
using spectral::Spectrum;

void SolverConfig::validate() const {
    if (grid.n < 8) throw InputError("solver: grid not initialised");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw InputError("solver: nu must be finite and nonnegative");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InputError("solver: t_end must be positive");
    if (!std::isfinite(dt)) throw InputError("solver: dt must be finite");
    if (output_stride < 1) throw InputError("solver: output_stride must be >= 1");
    if (!(cfl_safety > 0.0) || cfl_safety > 1.0) throw InputError("solver: cfl_safety must lie in (0, 1]");
    if (dt_refresh < 1) throw InputError("solver: dt_refresh must be >= 1");
    if (!(sigma > 0.0)) throw InputError("solver: sigma must be positive");
}

std::vector<double> Trajectory::times() const {
    std::vector<double> t;
    t.reserve(snapshots.size());
    for (const auto& s : snapshots) t.push_back(s.t);
    return t;
}

double cfl_dt(const VectorField2& velocity, const SolverConfig& cfg) {
    const double umax = velocity.magnitude().max_abs();
    if (!(umax > 0.0)) return cfg.t_end;
    const auto& g = cfg.grid;
    const double advective = g.dx / umax;
    // RK4 covers |lambda dt| <= 2.8 on the imaginary axis; 2 keeps a margin.
    const double spectral_bound = 2.0 / (static_cast<double>(g.dealias_cutoff) * umax);
    return cfg.cfl_safety * std::min(advective, spectral_bound);
}

FlowSolver::FlowSolver(SolverConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

VectorField2 FlowSolver::velocity_of(const Spectrum& omega_hat, Mean mean) const {
    Spectrum uh(cfg_.grid);
    Spectrum vh(cfg_.grid);
    for (int r = 0; r < omega_hat.rows(); ++r) {
        const double ky = omega_hat.ky(r);
        for (int c = 0; c < omega_hat.cols(); ++c) {
            const double kx = omega_hat.kx(c);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            const Complex psi = omega_hat.at(r, c) / k2;
            uh.at(r, c) = Complex(0.0, omega_hat.dky(r)) * psi;
            vh.at(r, c) = Complex(0.0, -omega_hat.dkx(c)) * psi;
        }
    }
    const double n2 = static_cast<double>(cfg_.grid.size());
    uh.at(0, 0) = Complex(mean.u * n2, 0.0);
    vh.at(0, 0) = Complex(mean.v * n2, 0.0);
    return {spectral::inverse(uh), spectral::inverse(vh)};
}

Spectrum FlowSolver::nonlinear(const Spectrum& omega_hat, Mean mean) const {
    Spectrum w = omega_hat;
    spectral::truncate(w);
    const VectorField2 u = velocity_of(w, mean);
    const ScalarField wx = spectral::inverse(spectral::dx(w));
    const ScalarField wy = spectral::inverse(spectral::dy(w));
    ScalarField adv = hadamard(u.u, wx) + hadamard(u.v, wy);
    adv *= -1.0;
    Spectrum out = spectral::forward(adv);
    spectral::truncate(out);
    out.at(0, 0) = Complex(0.0, 0.0);
    return out;
}

Spectrum FlowSolver::decay(const Spectrum& s, double dt) const {
    Spectrum out = s;
    if (cfg_.nu == 0.0) return out;
    const double rate = cfg_.nu * dt;
    out.apply([rate](int kx, int ky) { return std::exp(-rate * static_cast<double>(kx * kx + ky * ky)); });
    return out;
}

double FlowSolver::tail_fraction(const Spectrum& omega_hat) const {
    const double shell = 2.0 * cfg_.grid.dealias_cutoff / 3.0;
    double total = 0.0;
    double tail = 0.0;
    for (int r = 0; r < omega_hat.rows(); ++r) {
        const int ky = std::abs(omega_hat.ky(r));
        for (int c = 0; c < omega_hat.cols(); ++c) {
            const double e = omega_hat.weight(c) * std::norm(omega_hat.at(r, c));
            total += e;
            if (std::max(ky, c) > shell) tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

SolverState FlowSolver::initial_state(const VectorField2& u0) const {
    if (!(u0.grid() == cfg_.grid)) throw InputError("solver: initial velocity is on a different grid");
    if (!u0.u.all_finite() || !u0.v.all_finite()) throw InputError("solver: initial velocity is not finite");
    const double norm = lp_norm(u0, 2.0);
    if (max_divergence(u0) > 1e-9 * (1.0 + norm)) {
        throw InputError("solver: initial velocity is not divergence free");
    }
    Spectrum w = spectral::forward(curl(u0));
    spectral::truncate(w);
    const Mean mean{u0.u.mean(), u0.v.mean()};
    SolverState s;
    s.omega = spectral::inverse(w);
    s.velocity = velocity_of(w, mean);
    s.t = 0.0;
    s.step = 0;
    return s;
}

SolverState FlowSolver::step(const SolverState& state, double dt) const {
    if (!(dt > 0.0)) throw SolverAbort("solver: nonpositive time step");
    const double limit = cfl_dt(state.velocity, cfg_);
    if (dt > limit * (1.0 + 1e-12)) {
        throw SolverAbort("solver: CFL violation at t=" + std::to_string(state.t) + " (dt=" + std::to_string(dt) +
                          ", limit=" + std::to_string(limit) + ")");
    }
    const Mean mean{state.velocity.u.mean(), state.velocity.v.mean()};
    const Spectrum w = spectral::forward(state.omega);

    const Spectrum k1 = nonlinear(w, mean);
    const Spectrum w2 = decay(w + (0.5 * dt) * k1, 0.5 * dt);
    const Spectrum k2 = nonlinear(w2, mean);
    const Spectrum w3 = decay(w, 0.5 * dt) + (0.5 * dt) * k2;
    const Spectrum k3 = nonlinear(w3, mean);
    const Spectrum w4 = decay(w, dt) + dt * decay(k3, 0.5 * dt);
    const Spectrum k4 = nonlinear(w4, mean);

    const double rate1 = cfg_.nu * spectral::l2_squared(w);
    const double rate2 = cfg_.nu * spectral::l2_squared(w2);
    const double rate3 = cfg_.nu * spectral::l2_squared(w3);
    const double rate4 = cfg_.nu * spectral::l2_squared(w4);

    Spectrum incr = decay(k1, dt) + 2.0 * decay(k2 + k3, 0.5 * dt) + k4;
    Spectrum next = decay(w, dt) + (dt / 6.0) * incr;
    spectral::truncate(next);

    for (const auto& z : next.data()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw SolverAbort("solver: non-finite vorticity at t=" + std::to_string(state.t + dt));
        }
    }
    if (cfg_.nu == 0.0) {
        const double tail = tail_fraction(next);
        if (tail > cfg_.tail_threshold) {
            throw SolverAbort("solver: spectral tail holds " + std::to_string(tail) +
                              " of the enstrophy at t=" + std::to_string(state.t + dt));
        }
    }

    SolverState out;
    out.omega = spectral::inverse(next);
    out.velocity = velocity_of(next, mean);
    out.t = state.t + dt;
    out.step = state.step + 1;
    out.step_dissipation = (dt / 6.0) * (rate1 + 2.0 * (rate2 + rate3) + rate4);
    return out;
}

LedgerRow FlowSolver::measure(const SolverState& state, double cumulative_dissipation) const {
    LedgerRow row;
    const auto& u = state.velocity;
    row.t = state.t;
    row.energy = 0.5 * dot_integral(u, u);
    row.cumulative_dissipation = cumulative_dissipation;
    row.linf_velocity = u.magnitude().max_abs();
    const SymTensor2 S = sym_gradient(u);
    row.l2_sym_gradient = lp_norm(S, 2.0);
    row.lexp_sym_gradient = cfg_.record_lexp ? lexp_norm(S).norm : std::numeric_limits<double>::quiet_NaN();
    row.l2psigma_velocity = lp_norm(u, 2.0 + cfg_.sigma);
    row.l2_gradient = std::sqrt(grad_l2_squared(u));
    return row;
}

Trajectory FlowSolver::run(const VectorField2& u0) const {
    Trajectory traj;
    traj.nu = cfg_.nu;
    traj.grid = cfg_.grid;

    SolverState state = initial_state(u0);
    double dissipation = 0.0;
    traj.ledger.push_back(measure(state, dissipation));
    traj.snapshots.push_back(state);

    const bool fixed = cfg_.dt > 0.0;
    const double end_slack = 1e-12 * cfg_.t_end;
    double dt = fixed ? cfg_.dt : cfl_dt(state.velocity, cfg_);
    while (state.t < cfg_.t_end) {
        double next_t;
        if (fixed) {
            next_t = std::min(static_cast<double>(state.step + 1) * dt, cfg_.t_end);
        } else {
            if (state.step % static_cast<std::size_t>(cfg_.dt_refresh) == 0) dt = cfl_dt(state.velocity, cfg_);
            next_t = state.t + dt;
        }
        if (next_t > cfg_.t_end - end_slack) next_t = cfg_.t_end;

        SolverState next = step(state, next_t - state.t);
        next.t = next_t;
        dissipation += next.step_dissipation;
        state = std::move(next);

        const bool last = state.t >= cfg_.t_end;
        if (last || state.step % static_cast<std::size_t>(cfg_.output_stride) == 0) {
            traj.ledger.push_back(measure(state, dissipation));
            traj.snapshots.push_back(state);
        }
    }
    return traj;
}

SolverState step(const SolverState& state, const SolverConfig& cfg, double dt) {
    return FlowSolver(cfg).step(state, dt);
}

Trajectory run(const VectorField2& u0, const SolverConfig& cfg) { return FlowSolver(cfg).run(u0); }

AdmissibilityReport admissibility_check(const Trajectory& traj, double tol_energy) {
    if (traj.ledger.empty()) throw InputError("admissibility_check: empty trajectory");
    AdmissibilityReport rep;
    const double e0 = traj.ledger.front().energy;
    for (std::size_t i = 0; i < traj.ledger.size(); ++i) {
        const double excess = traj.ledger[i].energy - e0;
        rep.max_excess = std::max(rep.max_excess, excess);
        if (excess > tol_energy) {
            rep.ok = false;
            rep.flagged.push_back(i);
        }
    }
    return rep;
}

EnergyInequalityReport energy_inequality_check(const Trajectory& traj, double tol_energy) {
    if (traj.ledger.empty()) throw InputError("energy_inequality_check: empty trajectory");
    EnergyInequalityReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    // slack(i, j) = F_i - F_j with F = E + D; track the running minimum of F_i.
    std::size_t best = 0;
    auto total = [&](std::size_t k) { return traj.ledger[k].energy + traj.ledger[k].cumulative_dissipation; };
    for (std::size_t j = 1; j < traj.ledger.size(); ++j) {
        const double slack = total(best) - total(j);
        if (slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.worst_first = best;
            rep.worst_second = j;
        }
        if (total(j) < total(best)) best = j;
    }
    if (traj.ledger.size() < 2) rep.min_slack = 0.0;
    rep.ok = rep.min_slack >= -tol_energy;
    return rep;
}

}  // namespace ovw
