#include "ovw/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ovw/errors.hpp"
#include "ovw/snapshot_io.hpp"
#include "text_format.hpp"

namespace ovw::io {

namespace {
constexpr const char* kLedgerHeader =
    "t,energy,cumulative_dissipation,linf_velocity,l2_sym_gradient,lexp_sym_gradient,l2psigma_velocity,l2_gradient";
}

void write_ledger_csv(const std::filesystem::path& path, const std::vector<LedgerRow>& ledger) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << kLedgerHeader << '\n';
    using detail::fmt;
    for (const auto& r : ledger) {
        out << fmt(r.t) << ',' << fmt(r.energy) << ',' << fmt(r.cumulative_dissipation) << ','
            << fmt(r.linf_velocity) << ',' << fmt(r.l2_sym_gradient) << ',' << fmt(r.lexp_sym_gradient) << ','
            << fmt(r.l2psigma_velocity) << ',' << fmt(r.l2_gradient) << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

std::vector<LedgerRow> read_ledger_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != kLedgerHeader) throw IoError(path.string() + ": unexpected ledger header");
    std::vector<LedgerRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        double v[8];
        for (double& x : v) {
            if (!std::getline(ss, cell, ',')) throw IoError(path.string() + ": short ledger row");
            x = std::stod(cell);
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
    }
    return rows;
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "t_%06zu.bin", k);
        const auto& s = traj.snapshots[k];
        write_snapshot(dir / name, make_snapshot(s.velocity, s.t));
    }
    write_ledger_csv(dir / "ledger.csv", traj.ledger);
}

}  // namespace ovw::io
