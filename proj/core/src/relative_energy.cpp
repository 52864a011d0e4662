#include "ovw/relative_energy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>

#include "ovw/errors.hpp"
#include "ovw/field_ops.hpp"
#include "ovw/spectral.hpp"
#include "text_format.hpp"

namespace ovw {

namespace {

void require_aligned(const Trajectory& a, const Trajectory& b) {
    if (!(a.grid == b.grid)) throw InputError("trajectories live on different grids");
    if (a.snapshots.size() != b.snapshots.size()) throw InputError("trajectories have different snapshot counts");
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        const double ta = a.snapshots[k].t;
        const double tb = b.snapshots[k].t;
        if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(ta))) {
            throw InputError("trajectories have different snapshot times");
        }
    }
}

std::size_t index_of(const Trajectory& traj, double tau) {
    if (traj.snapshots.empty()) throw InputError("empty trajectory");
    const double t_end = traj.snapshots.back().t;
    const double slack = 1e-9 * std::max(1.0, t_end);
    if (tau < -slack || tau > t_end + slack) throw InputError("time outside the trajectory horizon");
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        if (std::abs(traj.snapshots[k].t - tau) <= slack) return k;
    }
    throw InputError("time is not a snapshot time");
}

/// Trapezoid of integrand over snapshots [i1, i2] with the given index stride
/// (the endpoint i2 is always included).
double trapezoid(const std::vector<double>& t, const std::vector<double>& y, std::size_t i1, std::size_t i2,
                 std::size_t stride) {
    double sum = 0.0;
    std::size_t prev = i1;
    for (std::size_t k = i1 + stride; prev < i2; k += stride) {
        const std::size_t cur = std::min(k, i2);
        sum += 0.5 * (t[cur] - t[prev]) * (y[cur] + y[prev]);
        prev = cur;
    }
    return sum;
}

struct Quadrature {
    double value;
    double delta;
};

Quadrature integrate(const std::vector<double>& t, const std::vector<double>& y, std::size_t i1, std::size_t i2) {
    const double full = trapezoid(t, y, i1, i2, 1);
    const double delta = (i2 - i1 >= 2) ? std::abs(full - trapezoid(t, y, i1, i2, 2))
                                        : std::numeric_limits<double>::quiet_NaN();
    return {full, delta};
}

/// int sym_grad U : (U - u) (x) (u - U) = -int S : w (x) w with w = u - U (dealiased).
double cubic_term(const VectorField2& u, const VectorField2& U) {
    const VectorField2 w = spectral::dealias(u - U);
    const SymTensor2 S = sym_gradient(spectral::dealias(U));
    return -contract_integral(S, sym_outer(w, w));
}

std::vector<double> snapshot_times(const Trajectory& traj) { return traj.times(); }

}  // namespace

double rel_energy(const VectorField2& u, const VectorField2& U) {
    if (!(u.grid() == U.grid())) throw InputError("rel_energy: fields live on different grids");
    const VectorField2 w = u - U;
    return 0.5 * dot_integral(w, w);
}

double default_inequality_tol(double initial_energy) { return 1e-8 * (1.0 + initial_energy); }

InequalityResidual key_inequality(const Trajectory& u, const Trajectory& U, double tau) {
    require_aligned(u, U);
    const std::size_t i2 = index_of(U, tau);
    const auto t = snapshot_times(U);
    std::vector<double> y(i2 + 1);
    for (std::size_t k = 0; k <= i2; ++k) y[k] = cubic_term(u.snapshots[k].velocity, U.snapshots[k].velocity);
    const auto q = integrate(t, y, 0, i2);

    InequalityResidual r;
    r.variant = "plain";
    r.tau1 = 0.0;
    r.tau2 = t[i2];
    r.lhs = rel_energy(u.snapshots[i2].velocity, U.snapshots[i2].velocity);
    r.rhs = rel_energy(u.snapshots[0].velocity, U.snapshots[0].velocity) + q.value;
    r.slack = r.rhs - r.lhs;
    r.quadrature_delta = q.delta;
    return r;
}

InequalityResidual viscous_key_inequality(const Trajectory& u_nu, const Trajectory& U, double tau1, double tau2) {
    if (!(u_nu.nu > 0.0)) throw InputError("viscous_key_inequality: the first trajectory must have nu > 0");
    if (U.nu != 0.0) throw InputError("viscous_key_inequality: the second trajectory must be an Euler run");
    if (!(tau1 < tau2)) throw InputError("viscous_key_inequality: requires tau1 < tau2");
    require_aligned(u_nu, U);
    const std::size_t i1 = index_of(U, tau1);
    const std::size_t i2 = index_of(U, tau2);
    const auto t = snapshot_times(U);

    std::vector<double> y(t.size(), 0.0);
    for (std::size_t k = i1; k <= i2; ++k) {
        const auto& un = u_nu.snapshots[k].velocity;
        const auto& Ue = U.snapshots[k].velocity;
        const double viscous = u_nu.nu * contract_integral(sym_gradient(un), sym_gradient(Ue));
        y[k] = cubic_term(un, Ue) + viscous;
    }
    const auto q = integrate(t, y, i1, i2);

    InequalityResidual r;
    r.variant = "viscous";
    r.tau1 = t[i1];
    r.tau2 = t[i2];
    r.lhs = rel_energy(u_nu.snapshots[i2].velocity, U.snapshots[i2].velocity);
    r.rhs = rel_energy(u_nu.snapshots[i1].velocity, U.snapshots[i1].velocity) + q.value;
    r.slack = r.rhs - r.lhs;
    r.quadrature_delta = q.delta;
    return r;
}

InequalityResidual mollified_energy_balance(const Trajectory& U, const MollifierSpec& spec, double tau,
                                            double sigma) {
    const std::size_t i2 = index_of(U, tau);
    const auto t = snapshot_times(U);
    std::vector<double> y(i2 + 1);
    double e0 = 0.0;
    double e1 = 0.0;
    for (std::size_t k = 0; k <= i2; ++k) {
        const auto& Uk = U.snapshots[k].velocity;
        const auto [R, rep] = commutator(Uk, spec, sigma);
        const VectorField2 Ue = mollify(spectral::dealias(Uk), spec);
        y[k] = -contract_integral(R, sym_gradient(Ue));
        if (k == 0) e0 = 0.5 * dot_integral(Ue, Ue);
        if (k == i2) e1 = 0.5 * dot_integral(Ue, Ue);
    }
    const auto q = integrate(t, y, 0, i2);

    InequalityResidual r;
    r.variant = "mollified";
    r.tau1 = 0.0;
    r.tau2 = t[i2];
    r.lhs = e1 - e0;
    r.rhs = q.value;
    r.slack = r.rhs - r.lhs;
    r.quadrature_delta = q.delta;
    return r;
}

ConservationReport energy_conservation_check(const Trajectory& U, double sigma) {
    ConservationReport rep;
    if (U.nu != 0.0) {
        rep.euler = false;
        rep.note = "not an Euler trajectory";
        return rep;
    }
    if (U.snapshots.empty()) throw InputError("energy_conservation_check: empty trajectory");
    const auto& v0 = U.snapshots.front().velocity;
    const double e0 = 0.5 * dot_integral(v0, v0);
    for (const auto& s : U.snapshots) {
        const double e = 0.5 * dot_integral(s.velocity, s.velocity);
        const double drift = e0 > 0.0 ? std::abs(e - e0) / e0 : std::abs(e - e0);
        rep.max_relative_drift = std::max(rep.max_relative_drift, drift);
        rep.hypotheses.push_back({s.t, lp_norm(s.velocity, 2.0 + sigma), lexp_norm(sym_gradient(s.velocity)).norm});
    }
    return rep;
}

void write_inequality_report(const std::filesystem::path& path, const std::vector<InequalityResidual>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "variant,tau1,tau2,lhs,rhs,slack\n";
    using detail::fmt;
    for (const auto& r : rows) {
        out << r.variant << ',' << fmt(r.tau1) << ',' << fmt(r.tau2) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
            << fmt(r.slack) << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace ovw
