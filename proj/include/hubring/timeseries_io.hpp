#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hubring/scenarios.hpp"

namespace hubring {

/// Canonical number formatting for data files: 12 significant digits.
std::string format_number(double value);

/// CSV with the fixed header
///   t,J_up,J_dn,Q_up,Q_dn,n_1..n_L,nup_1..nup_L,ndn_1..ndn_L
/// one row per grid time, numbers formatted by format_number. Identical runs
/// produce byte-identical files.
void write_timeseries_csv(const std::filesystem::path& path, const ScenarioRun& run);

/// JSON mirror: an array of row objects with the same field names as the CSV.
void write_timeseries_json(const std::filesystem::path& path, const ScenarioRun& run);

/// Per-scan summary: alpha,Qbar_up,Qbar_dn,counterprop_flag.
void write_scan_summary_csv(const std::filesystem::path& path, const AlphaScanResult& result);

struct ParsedTimeseries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

ParsedTimeseries read_timeseries_csv(const std::filesystem::path& path);

}  // namespace hubring
