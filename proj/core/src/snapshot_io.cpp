#include "ovw/snapshot_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "ovw/errors.hpp"

namespace ovw::io {

namespace {

constexpr std::array<char, 8> kMagic{'O', 'V', 'F', 'I', 'E', 'L', 'D', '1'};

template <class T>
void put_le(std::ostream& os, T value) {
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) throw IoError("snapshot truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

std::size_t component_count(FieldKind k) {
    switch (k) {
        case FieldKind::scalar: return 1;
        case FieldKind::vector: return 2;
        case FieldKind::symtensor: return 3;
    }
    throw IoError("unknown field kind");
}

const char* kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::scalar: return "scalar";
        case FieldKind::vector: return "vector";
        case FieldKind::symtensor: return "symtensor";
    }
    return "unknown";
}

}  // namespace

FieldSnapshot make_snapshot(const ScalarField& f, double time) { return {FieldKind::scalar, time, {f}}; }

FieldSnapshot make_snapshot(const VectorField2& f, double time) {
    return {FieldKind::vector, time, {f.u, f.v}};
}

FieldSnapshot make_snapshot(const SymTensor2& f, double time) {
    return {FieldKind::symtensor, time, {f.xx, f.xy, f.yy}};
}

VectorField2 as_vector(const FieldSnapshot& s) {
    if (s.kind != FieldKind::vector) throw InputError("snapshot is not a vector field");
    return {s.components.at(0), s.components.at(1)};
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    auto p = path;
    p.replace_extension(".json");
    return p;
}

void write_snapshot(const std::filesystem::path& path, const FieldSnapshot& snap) {
    if (snap.components.size() != component_count(snap.kind)) {
        throw InputError("snapshot component count does not match its kind");
    }
    const GridSpec grid = snap.grid();
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(grid.n));
    put_le<std::uint8_t>(os, static_cast<std::uint8_t>(snap.kind));
    put_le<double>(os, snap.time);
    for (const auto& c : snap.components) {
        if (!(c.grid() == grid)) throw InputError("snapshot components on different grids");
        for (double v : c.values()) put_le<double>(os, v);
    }
    if (!os) throw IoError("write failed for " + path.string());

    nlohmann::json meta{{"format", "OVFIELD1"},
                        {"n", grid.n},
                        {"dx", grid.dx},
                        {"domain", {0.0, 2.0 * std::numbers::pi}},
                        {"dealias_cutoff", grid.dealias_cutoff},
                        {"kind", kind_name(snap.kind)},
                        {"components", component_count(snap.kind)},
                        {"time", snap.time},
                        {"layout", "row-major, y outermost, little-endian f64"}};
    std::ofstream js(sidecar_path(path), std::ios::trunc);
    if (!js) throw IoError("cannot open sidecar for " + path.string());
    js << meta.dump(2) << '\n';
    if (!js) throw IoError("sidecar write failed for " + path.string());
}

FieldSnapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::array<char, 8> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw IoError("bad snapshot magic in " + path.string());
    const auto n = get_le<std::uint32_t>(is);
    const auto kind_raw = get_le<std::uint8_t>(is);
    if (kind_raw > 2) throw IoError("bad field kind in " + path.string());
    FieldSnapshot snap;
    snap.kind = static_cast<FieldKind>(kind_raw);
    snap.time = get_le<double>(is);
    const GridSpec grid = GridSpec::make(static_cast<int>(n));
    for (std::size_t c = 0; c < component_count(snap.kind); ++c) {
        std::vector<double> values(grid.size());
        for (double& v : values) v = get_le<double>(is);
        snap.components.emplace_back(grid, std::move(values));
    }
    return snap;
}

}  // namespace ovw::io
