/// @file spectral.hpp
/// @brief Real-to-complex transforms on the periodic grid.
///
/// Layout: a Spectrum holds n rows (ky) by n/2 + 1 columns (kx >= 0), row-major,
/// matching the physical layout of ScalarField with y outermost. Row j carries
/// ky = j for j <= n/2 and j - n otherwise; column i carries kx = i.
///
/// Normalisation: forward is unnormalised, inverse divides by n^2, so the
/// coefficient of e^{i k.x} in f equals forward(f)[k] / n^2.
///
/// Differentiation uses wavenumbers with the Nyquist row and column set to
/// zero so derivatives of real fields stay real.

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "ovw/field.hpp"
#include "ovw/grid.hpp"

namespace ovw::spectral {

using Complex = std::complex<double>;

class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(GridSpec grid);

    const GridSpec& grid() const { return grid_; }
    int rows() const { return grid_.n; }
    int cols() const { return grid_.n / 2 + 1; }

    Complex& at(int row, int col) { return data_[static_cast<std::size_t>(row) * cols() + col]; }
    const Complex& at(int row, int col) const { return data_[static_cast<std::size_t>(row) * cols() + col]; }

    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }

    /// Signed wavenumbers of a slot.
    int ky(int row) const { return row <= grid_.n / 2 ? row : row - grid_.n; }
    int kx(int col) const { return col; }
    /// Wavenumbers used for differentiation (Nyquist mapped to zero).
    double dky(int row) const;
    double dkx(int col) const;

    /// Multiplicity of a column in the full Hermitian spectrum (1 or 2).
    double weight(int col) const { return (col == 0 || col == grid_.n / 2) ? 1.0 : 2.0; }

    /// Multiply each mode by m(kx, ky) evaluated on signed wavenumbers.
    void apply(const std::function<double(int, int)>& m);

    Spectrum& operator+=(const Spectrum& o);
    Spectrum& operator-=(const Spectrum& o);
    Spectrum& operator*=(double s);
    friend Spectrum operator+(Spectrum a, const Spectrum& b) { return a += b; }
    friend Spectrum operator-(Spectrum a, const Spectrum& b) { return a -= b; }
    friend Spectrum operator*(Spectrum a, double s) { return a *= s; }
    friend Spectrum operator*(double s, Spectrum a) { return a *= s; }

private:
    GridSpec grid_{};
    std::vector<Complex> data_;
};

Spectrum forward(const ScalarField& f);
ScalarField inverse(const Spectrum& s);

/// 2/3 rule: zero every mode with |kx| or |ky| above the grid's cutoff.
void truncate(Spectrum& s);
bool is_retained(const GridSpec& grid, int kx, int ky);

Spectrum dx(const Spectrum& s);
Spectrum dy(const Spectrum& s);

/// Truncated copy of a physical field.
ScalarField dealias(const ScalarField& f);
VectorField2 dealias(const VectorField2& f);

/// Product of two fields after the 2/3 truncation of both inputs.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

/// Integral of |f|^2 via Parseval.
double l2_squared(const Spectrum& s);

}  // namespace ovw::spectral
