/// @file orlicz.hpp
/// @brief The exponential Orlicz space L^exp on a discrete measure.
///
/// Everything here works on a sampled function together with a uniform cell
/// measure, so the same code serves the periodic grid (cell = dx^2) and small
/// hand-built measure spaces used as closed-form oracles.
///
///   psi(s)           = e^s - 1
///   ||f||_exp        = inf { b > 0 : sum_i w psi(|f_i| / b) <= 1 }
///   ||f||_p          <= (p!)^{1/p} ||f||_exp          (p = 1, 2, ...)
///   int |f g|        <= C ||f||_exp ||g||_1 [log(1 + ||g||_inf) + |log ||g||_1| + 1]

#pragma once

#include <cstddef>
#include <span>

namespace ovw::orlicz {

/// Sampled function on a measure space whose atoms all have mass `cell_measure`.
struct DiscreteFunction {
    std::span<const double> values;
    double cell_measure = 1.0;
};

/// psi(s) = e^s - 1. Throws DomainError for s < 0.
double young_eval(double s);

/// (e^s - 1) + t log(t + 1) - s t, which is never negative.
double duality_gap(double s, double t);

struct LuxemburgResult {
    double norm = 0.0;
    double residual = 0.0;  ///< quadrature of psi(|f|/norm) minus one
    int iterations = 0;
};

inline constexpr double kDefaultLuxemburgTol = 1e-10;

/// Luxemburg norm by bracketing and bisection on beta.
///
/// The modular I(beta) = sum w psi(|f|/beta) is strictly decreasing, so the
/// bracket starts at [1e-8 max|f|, max|f|] and the upper end is doubled until
/// I <= 1. Bisection then runs until |I - 1| <= tol and the bracket is
/// relatively narrower than tol.
LuxemburgResult luxemburg_norm(const DiscreteFunction& f, double tol = kDefaultLuxemburgTol);

/// Quadrature of psi(|f| / beta).
double modular(const DiscreteFunction& f, double beta);

struct EmbeddingCheck {
    double lp_norm = 0.0;
    double bound = 0.0;  ///< (p!)^{1/p} ||f||_exp
};

/// L^p norm next to its L^exp bound. f must not vanish identically.
EmbeddingCheck embedding_check(const DiscreteFunction& f, int p,
                               double tol = kDefaultLuxemburgTol);

/// Constant for the log-interpolation bound obtained by following the
/// duality argument with lambda = ||g||_1 and log(1+2a) <= log 2 + log(1+a).
double log_interpolation_constant();

struct InterpBound {
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;
};

/// Both sides of the log-interpolation inequality. ||g||_1 = 0 gives 0 <= 0.
InterpBound log_interpolation(const DiscreteFunction& f, const DiscreteFunction& g,
                              double constant, double tol = kDefaultLuxemburgTol);

/// Plain sample-space L^p norm (p >= 1; +inf for the sup norm).
double lp_norm(const DiscreteFunction& f, double p);

}  // namespace ovw::orlicz
