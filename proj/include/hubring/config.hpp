#pragma once

#include <optional>
#include <set>
#include <string>

#include "hubring/scenarios.hpp"

namespace hubring {

/// Declarative run description parsed from a key = value config file.
/// Parsing is fail-closed: unknown keys, duplicate keys, malformed values and
/// keys that do not apply to the chosen scenario are all rejected with the
/// offending line. Defaults reproduce the reference configuration
/// (L=8, N_up=2, N_dn=1, J=1, U=10, h=20, α=0.5, t_max=40, dt=0.05).
struct RunConfig {
  std::string scenario;  // barrier-comparison | direction-flip | alpha-scan

  int sites = 8;
  int n_up = 2;
  int n_dn = 1;
  double tunneling = 1.0;
  double interaction = 10.0;
  double barrier_height = 20.0;
  double alpha = 0.5;

  std::string bias = "both";  // A | B | both (direction-flip, alpha-scan)
  double alpha_min = 0.1;     // alpha-scan only
  double alpha_max = 1.2;
  double alpha_step = 0.02;

  double t_max = 40.0;
  double dt = 0.05;

  std::string mode = "auto";  // auto | exact | krylov
  int krylov_dim = 30;
  double krylov_tol = 1e-12;

  std::optional<InitialStateSpec> initial;  // barrier-comparison only
  std::string initial_text;                 // raw value, echoed verbatim

  std::string out_dir;  // empty -> HUBRING_OUT environment variable or "out"
  bool write_csv = true;
  bool write_json = true;
  bool plots = true;

  std::set<std::string> present;  // keys given explicitly

  SectorSpec sector() const { return SectorSpec{sites, n_up, n_dn}; }
  ModelParams params() const {
    return ModelParams{tunneling, interaction, BarrierSpec{barrier_height, alpha}};
  }
  AlphaScanSpec scan() const { return AlphaScanSpec{alpha_min, alpha_max, alpha_step}; }
};

/// Throws ConfigError with a line/key diagnostic on any violation.
RunConfig parse_config(const std::string& text);

/// Value syntax accepted by the `initial` key:
///   symmetric
///   product: doublon@4 up@1
///   superposition: 1*(doublon@4 up@1) + 1*(doublon@5 up@8)
InitialStateSpec parse_initial_state(const std::string& value);

/// Canonical key = value text of a fully resolved config, suitable for the
/// provenance echo written alongside run outputs.
std::string echo_config(const RunConfig& config);

}  // namespace hubring
