#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "hubring/config.hpp"

namespace hubring {

/// Process exit codes used by the CLI.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

struct CliOverrides {
  std::optional<std::string> out_dir;
  std::optional<std::string> mode;  // exact | krylov
  bool no_plots = false;
};

/// Parse a config file, run its scenario, and persist CSV/JSON outputs plus
/// the resolved-config echo; plots come last and never invalidate the data.
/// Diagnostics go to the streams; the return value is the process exit code.
int run_from_config_file(const std::string& config_path, const CliOverrides& overrides,
                         std::ostream& out, std::ostream& err);

void list_scenarios(std::ostream& out);

/// Invariant suite on the reference configuration; prints one line per check.
int run_selftest(std::ostream& out);

}  // namespace hubring
