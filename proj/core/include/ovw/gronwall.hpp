/// @file gronwall.hpp
/// @brief Explicit log-Gronwall certificates for the vanishing-viscosity rate
///        sup_t ||u^nu - U||_2 <= M nu^{1/M}, plus a brute-force ODE comparison.
///
/// The window recursion, with theta = sigma / (4 + sigma) and P_k <= theta/4:
///
///   gamma_1 = 1,  gamma_k = e_{k-1}
///   a_k = min(gamma_k theta, 1/2),  e_k = a_k - gamma_k theta / 2
///   C_k = (C_{k-1} + 1 + Q_k) (2e)^{theta/4},  C_0 = 0
///
/// gives y = ||u^nu - U||_2^2 <= C_k nu^{e_k} on window k while C_N nu^{e_N} <= 1/2.
/// Large quantities (M, 1/e_N) are carried as logarithms.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ovw::gronwall {

/// Nonnegative function of time sampled on an increasing mesh, linear in between.
struct TimeProfile {
    std::vector<double> times;
    std::vector<double> values;

    static TimeProfile constant(double value, double t_end, std::size_t intervals);

    /// Throws InputError unless the mesh is increasing and the values finite and nonnegative.
    void validate() const;
    double value_at(double t) const;
    double integral() const;
    double integral(double a, double b) const;
    double max() const;
    std::uint64_t digest() const;  ///< FNV-1a over the raw bytes of times and values
};

/// sigma / (4 + sigma). Throws DomainError for sigma <= 0.
double theta_of(double sigma);

/// 2 (1 + 2 log 2): the factor in front of the log-interpolation term.
double default_c_interp();
/// Constant in front of the large-deviation term f h^{1 + theta}.
double default_c_sigma();

struct PqProfiles {
    TimeProfile p;
    TimeProfile q;
};

/// p = c_interp f (1 + c_sigma h^{1+theta}),  q = c_sigma f h^{1+theta} + g^2 on the union mesh.
PqProfiles derive_pq(const TimeProfile& f, const TimeProfile& g, const TimeProfile& h, double sigma,
                     double c_interp = default_c_interp(), double c_sigma = default_c_sigma());

struct WindowChoice {
    double t0 = 0.0;
    int n_windows = 0;
    double max_window_mass = 0.0;  ///< conservative sup of int_s^{s+t0} p
};

/// Largest multiple t0 of the (uniform) mesh spacing whose sliding windows carry at most
/// theta/4 of p. Throws CertificationFailure if no positive t0 qualifies.
WindowChoice choose_t0(const TimeProfile& p, double theta, double T);

struct CertifyOptions {
    double c_interp = default_c_interp();
    double c_sigma = default_c_sigma();
    double nu_floor = 1e-12;
    bool refine_mesh = false;   ///< subdivide the profile mesh until single cells carry <= theta/16 of p
    int max_refine_levels = 20;
};

struct WindowRecord {
    double start = 0.0;
    double end = 0.0;
    double gamma = 0.0;
    double exponent = 0.0;      ///< e_k
    double log_exponent = 0.0;  ///< log e_k (finite even when e_k underflows)
    double p_mass = 0.0;
    double q_mass = 0.0;
    double log_c = 0.0;         ///< log C_k
};

struct QuadratureBounds {
    double f = 0.0;
    double g = 0.0;
    double h = 0.0;
    double p = 0.0;
    double q = 0.0;
};

struct RateCertificate {
    double sigma = 0.0;
    double theta = 0.0;
    double t_end = 0.0;
    double t0 = 0.0;
    int n_windows = 0;
    std::vector<WindowRecord> windows;
    double log_c_final = 0.0;   ///< log C_N
    double c_envelope = 0.0;    ///< C_N^{1/N}
    double log_big_m = 0.0;
    double big_m = 0.0;         ///< +inf when M overflows a double
    double log_nu_bar = 0.0;
    double nu_bar = 0.0;
    double log_nu_bootstrap = 0.0;  ///< nu below which the window chain closes
    double log_log_nu_energy = 0.0; ///< log(-log nu_E); above nu_E the bound exceeds the energy ceiling
    double energy_ceiling = 0.0;
    double c_interp = 0.0;
    double c_sigma = 0.0;
    QuadratureBounds quadrature_error;
    std::uint64_t digest_f = 0;
    std::uint64_t digest_g = 0;
    std::uint64_t digest_h = 0;
    std::vector<std::string> notes;

    double log_bound(double nu) const;
    /// M nu^{1/M}; +inf on overflow.
    double bound(double nu) const;
    bool covers(double nu) const { return nu > 0.0 && std::log(nu) < log_nu_bar; }
};

/// Assembles the certificate. Throws CertificationFailure when no certificate can be closed.
RateCertificate certify(const TimeProfile& f, const TimeProfile& g, const TimeProfile& h, double sigma, double T,
                        const CertifyOptions& options = {});

std::string certificate_json(const RateCertificate& cert);
void write_certificate_json(const std::filesystem::path& path, const RateCertificate& cert);

/// y(tau) for y' = f(t) y (|log y| + log_const), y(0) = a, by adaptive RK4 with step halving
/// (local error <= 1e-10 relative). Returns +inf on overflow.
double ode_oracle(double a, const TimeProfile& f, double log_const, double tau);

/// e_1..e_n of the window recursion in the arithmetic of Real.
template <class Real>
std::vector<Real> exponent_ladder(const Real& theta, int n) {
    std::vector<Real> out;
    Real gamma = 1;
    const Real half = Real(1) / 2;
    for (int k = 0; k < n; ++k) {
        const Real a = std::min<Real>(gamma * theta, half);
        const Real e = a - gamma * theta / 2;
        out.push_back(e);
        gamma = e;
    }
    return out;
}

}  // namespace ovw::gronwall
