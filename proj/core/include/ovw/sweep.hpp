/// @file sweep.hpp
/// @brief Viscosity sweeps: one Euler run, one Navier-Stokes run per viscosity,
///        hypothesis profiles, inequality checks, rate fit and certificate.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ovw/gronwall.hpp"
#include "ovw/initial_data.hpp"
#include "ovw/relative_energy.hpp"

namespace ovw {

enum class InitialDataKind { taylor_green, band_limited_random };

struct SweepTolerances {
    double inequality_rel = 1e-8;  ///< slack >= -inequality_rel (1 + E(0))
    double energy_rel = 1e-9;      ///< Leray-Hopf pairs: slack >= -energy_rel E(0)
    double exact_rel = 1e-6;       ///< Taylor-Green distance vs closed form
    double tail = 1e-6;            ///< Euler spectral-tail monitor
};

struct SweepConfig {
    int n = 64;
    double t_end = 1.0;
    double sigma = 2.0;
    std::vector<double> nu_list;
    InitialDataKind initial_data = InitialDataKind::taylor_green;
    RandomFieldSpec random{};
    double dt = 0.0;      ///< <= 0: shared step from the CFL bound of the initial data
    int windows = 10;     ///< inequality windows per trajectory
    std::filesystem::path output_dir = "out";
    SweepTolerances tol{};

    /// Throws InputError on empty or unsorted nu_list, nu outside (0, 1), bad grid, etc.
    void validate() const;
};

SweepConfig parse_sweep_config(std::string_view json_text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct SweepRecord {
    double nu = 0.0;
    double sup_rel_dist = 0.0;       ///< sup_t ||u^nu(t) - U(t)||_2
    double exact_dist = -1.0;        ///< closed form for Taylor-Green, -1 otherwise
    double sup_sqrt_nu_grad = 0.0;   ///< sup_t sqrt(nu) ||grad u^nu||_2
    double sup_l2psigma = 0.0;       ///< sup_t ||u^nu||_{2+sigma}
    double min_slack = 0.0;          ///< minimum viscous inequality slack over the windows
    double energy_min_slack = 0.0;   ///< Leray-Hopf energy inequality, minimum over ledger pairs
    double certified_bound = 0.0;    ///< M nu^{1/M} (may be +inf)
    double log10_certified_bound = 0.0;
    bool covered = false;            ///< nu < nu_bar
    double wall_time = 0.0;
};

struct RateFit {
    bool ok = false;
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::string note;
};

/// Least squares of log sup_rel_dist against log nu. Throws InputError with fewer than three records.
RateFit fit_rate(const std::vector<SweepRecord>& records);

struct SweepResult {
    SweepConfig config;
    double dt = 0.0;
    double initial_energy = 0.0;
    std::vector<SweepRecord> records;  ///< sorted by nu, descending
    gronwall::TimeProfile f, g, h;
    std::optional<gronwall::RateCertificate> certificate;
    std::string certificate_failure;
    RateFit fit;
    std::vector<InequalityResidual> inequalities;
    std::map<std::string, bool> checks;

    bool all_passed() const;
};

/// Runs the sweep. Trajectories for distinct viscosities run concurrently.
/// Solver failures propagate as SolverAbort naming the viscosity.
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace ovw
