/// @file snapshot_io.hpp
/// @brief Binary field snapshots with a JSON sidecar.
///
/// Little-endian layout, no padding:
///
///   offset  size  content
///   0       8     magic "OVFIELD1"
///   8       4     n (u32)
///   12      1     kind (u8: 0 scalar, 1 vector, 2 symtensor)
///   13      8     time (f64)
///   21      ...   components back to back, each n*n f64 in row-major order
///
/// Components are (f), (u, v) or (xx, xy, yy). The sidecar sits next to the
/// binary with the extension replaced by ".json".

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ovw/field.hpp"

namespace ovw::io {

enum class FieldKind : std::uint8_t { scalar = 0, vector = 1, symtensor = 2 };

struct FieldSnapshot {
    FieldKind kind = FieldKind::scalar;
    double time = 0.0;
    std::vector<ScalarField> components;

    GridSpec grid() const { return components.at(0).grid(); }
};

FieldSnapshot make_snapshot(const ScalarField& f, double time);
FieldSnapshot make_snapshot(const VectorField2& f, double time);
FieldSnapshot make_snapshot(const SymTensor2& f, double time);

VectorField2 as_vector(const FieldSnapshot& s);

/// Writes the binary file and its sidecar. Throws IoError.
void write_snapshot(const std::filesystem::path& path, const FieldSnapshot& snap);
FieldSnapshot read_snapshot(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace ovw::io
