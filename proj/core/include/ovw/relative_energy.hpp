/// @file relative_energy.hpp
/// @brief Relative energy of two velocity fields and the associated integral
///        inequalities evaluated along solver trajectories as signed residuals.
///
/// All time integrals use the trapezoid rule on the snapshot times, so paired
/// trajectories must share their snapshot times exactly.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ovw/mollifier.hpp"
#include "ovw/solver.hpp"

namespace ovw {

/// (1/2) ||u - U||_2^2.
double rel_energy(const VectorField2& u, const VectorField2& U);

/// Default tolerance for the inequality checks: 1e-8 (1 + E(0)).
double default_inequality_tol(double initial_energy);

struct InequalityResidual {
    std::string variant;  ///< "plain", "viscous" or "mollified"
    double tau1 = 0.0;
    double tau2 = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;            ///< rhs - lhs
    double quadrature_delta = 0.0; ///< |rhs - rhs at half the snapshot density|, NaN if too few snapshots
};

/// E_rel(tau) <= int_0^tau int sym_grad U : (U - u) (x) (u - U).
/// Intended for two Euler trajectories; the right side includes E_rel(0),
/// which vanishes when the initial data agree.
InequalityResidual key_inequality(const Trajectory& u, const Trajectory& U, double tau);

/// E_rel(tau2) <= E_rel(tau1) + int sym_grad U : (U - u)(x)(u - U) + nu int grad u : sym_grad U.
/// u must be a viscous trajectory and U an Euler trajectory.
InequalityResidual viscous_key_inequality(const Trajectory& u_nu, const Trajectory& U, double tau1, double tau2);

/// lhs = E(U_eps)(tau) - E(U_eps)(0), rhs = -int_0^tau int R : sym_grad U_eps.
/// slack = rhs - lhs; |slack| is the balance residual.
InequalityResidual mollified_energy_balance(const Trajectory& U, const MollifierSpec& spec, double tau,
                                            double sigma = 2.0);

struct HypothesisRow {
    double t = 0.0;
    double l2psigma_velocity = 0.0;
    double lexp_sym_gradient = 0.0;
};

struct ConservationReport {
    bool euler = true;           ///< false when a viscous trajectory was supplied
    std::string note;
    double max_relative_drift = 0.0;  ///< max_t |E(t) - E(0)| / E(0)
    std::vector<HypothesisRow> hypotheses;
};

ConservationReport energy_conservation_check(const Trajectory& U, double sigma = 2.0);

/// Writes variant,tau1,tau2,lhs,rhs,slack. Throws IoError.
void write_inequality_report(const std::filesystem::path& path, const std::vector<InequalityResidual>& rows);

}  // namespace ovw
