/// @file trajectory_io.hpp
/// @brief Trajectory directories: velocity snapshots t_<index>.bin and ledger.csv.

#pragma once

#include <filesystem>
#include <vector>

#include "ovw/solver.hpp"

namespace ovw::io {

/// Creates dir if needed and writes every snapshot plus the ledger. Throws IoError.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj);

void write_ledger_csv(const std::filesystem::path& path, const std::vector<LedgerRow>& ledger);
std::vector<LedgerRow> read_ledger_csv(const std::filesystem::path& path);

}  // namespace ovw::io
