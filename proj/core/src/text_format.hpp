#pragma once

#include <cstdio>
#include <string>

namespace ovw::detail {

/// Shortest round-trip representation of a double.
inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace ovw::detail
