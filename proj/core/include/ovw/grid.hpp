#pragma once

#include <cstddef>
#include <numbers>

namespace ovw {

/// Uniform n x n grid on the torus [0, 2 pi)^2.
struct GridSpec {
    int n = 0;
    double dx = 0.0;
    int dealias_cutoff = 0;  ///< largest |k| per axis kept by the 2/3 rule

    /// Validates n (power of two, >= 8) and fills dx and the cutoff.
    static GridSpec make(int n);

    std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }
    double cell_measure() const { return dx * dx; }
    static constexpr double measure() { return 4.0 * std::numbers::pi * std::numbers::pi; }
    double coord(int i) const { return dx * i; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

}  // namespace ovw
