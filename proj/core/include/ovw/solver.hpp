/// @file solver.hpp
/// @brief Pseudo-spectral 2D Navier-Stokes / Euler solver in vorticity form.
///
/// d_t w + u . grad w = nu lap w,  u = grad^perp lap^{-1} w + mean velocity.
/// Time stepping is classical RK4 on the advection term with the exact
/// integrating factor exp(-nu |k|^2 t) for diffusion. The nonlinear term is
/// formed in physical space from 2/3-truncated inputs and truncated again.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ovw/field.hpp"
#include "ovw/spectral.hpp"

namespace ovw {

struct SolverConfig {
    GridSpec grid{};
    double nu = 0.0;
    double t_end = 1.0;
    double dt = 0.0;            ///< <= 0 selects the CFL-based step
    int output_stride = 1;      ///< steps between snapshots (the final state is always kept)
    double cfl_safety = 0.5;
    int dt_refresh = 10;        ///< auto-dt recomputed every this many steps
    double tail_threshold = 1e-6;  ///< Euler only: abort if the top-third shell exceeds this enstrophy share
    double sigma = 2.0;         ///< exponent for the L^{2+sigma} ledger column
    bool record_lexp = true;    ///< compute the L^exp column (costly)

    void validate() const;
};

struct SolverState {
    ScalarField omega;
    VectorField2 velocity;
    double t = 0.0;
    std::size_t step = 0;
    double step_dissipation = 0.0;  ///< nu * int ||grad u||^2 over the step that produced this state
};

struct LedgerRow {
    double t = 0.0;
    double energy = 0.0;                  ///< (1/2) ||u||_2^2
    double cumulative_dissipation = 0.0;  ///< nu int_0^t ||grad u||_2^2
    double linf_velocity = 0.0;
    double l2_sym_gradient = 0.0;
    double lexp_sym_gradient = 0.0;
    double l2psigma_velocity = 0.0;
    double l2_gradient = 0.0;             ///< ||grad u||_2
};

struct Trajectory {
    double nu = 0.0;
    GridSpec grid{};
    std::vector<SolverState> snapshots;
    std::vector<LedgerRow> ledger;  ///< one row per snapshot

    std::vector<double> times() const;
};

/// Largest admissible step for the given velocity.
double cfl_dt(const VectorField2& velocity, const SolverConfig& cfg);

class FlowSolver {
public:
    explicit FlowSolver(SolverConfig cfg);

    const SolverConfig& config() const { return cfg_; }

    /// Requires a divergence-free u0; the vorticity is truncated by the 2/3 rule.
    SolverState initial_state(const VectorField2& u0) const;

    /// One integrating-factor RK4 step. Throws SolverAbort on CFL violation or non-finite data.
    SolverState step(const SolverState& state, double dt) const;

    /// Integrates to t_end, recording snapshots and the energy ledger.
    Trajectory run(const VectorField2& u0) const;

    LedgerRow measure(const SolverState& state, double cumulative_dissipation) const;

private:
    struct Mean {
        double u = 0.0;
        double v = 0.0;
    };
    VectorField2 velocity_of(const spectral::Spectrum& omega_hat, Mean mean) const;
    spectral::Spectrum nonlinear(const spectral::Spectrum& omega_hat, Mean mean) const;
    spectral::Spectrum decay(const spectral::Spectrum& s, double dt) const;
    double tail_fraction(const spectral::Spectrum& omega_hat) const;

    SolverConfig cfg_;
};

SolverState step(const SolverState& state, const SolverConfig& cfg, double dt);
Trajectory run(const VectorField2& u0, const SolverConfig& cfg);

struct AdmissibilityReport {
    bool ok = true;
    std::vector<std::size_t> flagged;  ///< snapshot indices with E(t) > E(0) + tol
    double max_excess = 0.0;
};

AdmissibilityReport admissibility_check(const Trajectory& traj, double tol_energy);

struct EnergyInequalityReport {
    bool ok = true;
    double min_slack = 0.0;  ///< min over ledger pairs of E(t1) - E(t2) - (D(t2) - D(t1))
    std::size_t worst_first = 0;
    std::size_t worst_second = 0;
};

/// Checks the Leray-Hopf energy inequality at every ledger pair t1 < t2.
EnergyInequalityReport energy_inequality_check(const Trajectory& traj, double tol_energy);

}  // namespace ovw
