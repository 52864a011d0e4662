/// @file report.hpp
/// @brief Output files of a sweep.
///
///   sweep.csv               nu, sup_rel_dist, certified_bound, min_slack
///   certificate.json        constants of the rate certificate
///   rate_fit.json           least-squares exponent
///   records.json            full per-viscosity records
///   inequality_report.csv   variant, tau1, tau2, lhs, rhs, slack
///   summary.json            pass/fail per check
///   plotdata/distance.csv   log-log curve points
///   plotdata/profiles.csv   t, f, g, h

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "ovw/sweep.hpp"

namespace ovw {

/// Writes all files above into outdir (created if missing). Throws IoError.
void write_report(const SweepResult& result, const std::filesystem::path& outdir);

/// Writes {"checks": {...}, "passed": bool} to path. Throws IoError.
void write_summary_json(const std::filesystem::path& path, const std::map<std::string, bool>& checks);

/// Decimal rendering of 10^log10_value that works beyond the double range.
std::string format_pow10(double log10_value);

}  // namespace ovw
