#include "ovw/grid.hpp"

#include <bit>
#include <string>

#include "ovw/errors.hpp"

namespace ovw {

GridSpec GridSpec::make(int n) {
    if (n < 8 || !std::has_single_bit(static_cast<unsigned>(n))) {
        throw InputError("GridSpec: n must be a power of two >= 8, got " + std::to_string(n));
    }
    GridSpec g;
    g.n = n;
    g.dx = 2.0 * std::numbers::pi / n;
    g.dealias_cutoff = n / 3;
    return g;
}

}  // namespace ovw
