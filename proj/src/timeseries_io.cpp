#include "hubring/timeseries_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hubring {

namespace {

std::vector<std::string> column_names(int sites) {
  std::vector<std::string> names{"t", "J_up", "J_dn", "Q_up", "Q_dn"};
  for (const char* prefix : {"n_", "nup_", "ndn_"}) {
    for (int i = 1; i <= sites; ++i) names.push_back(prefix + std::to_string(i));
  }
  return names;
}

std::vector<double> row_values(const TimeSeriesRecord& record) {
  std::vector<double> values{record.t, record.current_up, record.current_dn, record.charge_up,
                             record.charge_dn};
  values.insert(values.end(), record.n.begin(), record.n.end());
  values.insert(values.end(), record.n_up.begin(), record.n_up.end());
  values.insert(values.end(), record.n_dn.begin(), record.n_dn.end());
  return values;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_timeseries_csv(const std::filesystem::path& path, const ScenarioRun& run) {
  if (run.records.empty()) throw IoError("refusing to write an empty time series");
  auto out = open_for_write(path);

  const auto names = column_names(static_cast<int>(run.records.front().n.size()));
  for (std::size_t c = 0; c < names.size(); ++c) {
    out << (c == 0 ? "" : ",") << names[c];
  }
  out << "\n";
  for (const TimeSeriesRecord& record : run.records) {
    const auto values = row_values(record);
    for (std::size_t c = 0; c < values.size(); ++c) {
      out << (c == 0 ? "" : ",") << format_number(values[c]);
    }
    out << "\n";
  }
  finish_write(out, path);
}

void write_timeseries_json(const std::filesystem::path& path, const ScenarioRun& run) {
  if (run.records.empty()) throw IoError("refusing to write an empty time series");
  const auto names = column_names(static_cast<int>(run.records.front().n.size()));

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const TimeSeriesRecord& record : run.records) {
    const auto values = row_values(record);
    nlohmann::ordered_json row;
    for (std::size_t c = 0; c < names.size(); ++c) row[names[c]] = values[c];
    rows.push_back(std::move(row));
  }

  auto out = open_for_write(path);
  out << rows.dump() << "\n";
  finish_write(out, path);
}

void write_scan_summary_csv(const std::filesystem::path& path, const AlphaScanResult& result) {
  auto out = open_for_write(path);
  out << "alpha,Qbar_up,Qbar_dn,counterprop_flag\n";
  for (const AlphaScanPoint& point : result.points) {
    out << format_number(point.alpha) << "," << format_number(point.mean_charge_up) << ","
        << format_number(point.mean_charge_dn) << "," << (point.counter_propagating ? 1 : 0)
        << "\n";
  }
  finish_write(out, path);
}

ParsedTimeseries read_timeseries_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

  ParsedTimeseries parsed;
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path.string() + "' is empty");
  {
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) parsed.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() != parsed.columns.size()) {
      throw IoError("'" + path.string() + "' has a row with " + std::to_string(values.size()) +
                    " cells, expected " + std::to_string(parsed.columns.size()));
    }
    parsed.rows.push_back(std::move(values));
  }
  return parsed;
}

}  // namespace hubring
