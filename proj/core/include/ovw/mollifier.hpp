/// @file mollifier.hpp
/// @brief Space mollification U_eps, the commutator U_eps (x) U_eps - (U (x) U)_eps,
///        and the residual of  d_i(U^i U^j) + d_j(|U|^2/2) = 2 U^i (sym grad U)^{ij}.
///
/// Both kernels act as real Fourier multipliers, so mollification commutes with
/// spectral derivatives and with the Leray projection on the grid.

#pragma once

#include <utility>
#include <vector>

#include "ovw/field.hpp"

namespace ovw {

enum class MollifierKind {
    spectral_gaussian,  ///< multiplier exp(-eps^2 |k|^2 / 2)
    periodized_bump,    ///< grid convolution with the normalised C^inf bump of radius eps
};

struct MollifierSpec {
    double epsilon = 0.1;
    MollifierKind kind = MollifierKind::spectral_gaussian;

    /// Throws DomainError unless 0 < epsilon < pi.
    void validate() const;
};

/// Real multiplier per spectrum slot (same layout as spectral::Spectrum).
std::vector<double> mollifier_multiplier(const MollifierSpec& spec, const GridSpec& grid);

ScalarField mollify(const ScalarField& f, const MollifierSpec& spec);
VectorField2 mollify(const VectorField2& U, const MollifierSpec& spec);
SymTensor2 mollify(const SymTensor2& T, const MollifierSpec& spec);

struct CommutatorReport {
    double epsilon = 0.0;
    double norm_1ps2 = 0.0;          ///< ||R||_{L^{1 + sigma/2}}
    double identity_residual = 0.0;  ///< identity_residual(U_eps)
};

/// R = U_eps (x) U_eps - (U (x) U)_eps with 2/3-dealiased products.
std::pair<SymTensor2, CommutatorReport> commutator(const VectorField2& U, const MollifierSpec& spec,
                                                   double sigma = 2.0);

/// max over j of the L^2 norm of  d_i(U^i U^j) + d_j(|U|^2/2) - 2 U^i (sym grad U)^{ij}.
/// Products are formed pointwise on the grid, so for fields beyond the 2/3 band the residual is the aliasing error.
/// Throws InputError when U is not divergence free.
double identity_residual(const VectorField2& U);

}  // namespace ovw
