#pragma once

#include <filesystem>
#include <vector>

#include "hubring/scenarios.hpp"

namespace hubring {

/// Panels a/b: Q_σ(t) for the asymmetric and symmetric barrier; panels c/d:
/// site-density heatmaps over (t, site) for the same two runs.
void emit_barrier_comparison_plots(const std::filesystem::path& dir,
                                   const BarrierComparisonResult& result);

/// One Q_σ(t) panel per biased configuration, lettered a, b, ...
void emit_direction_flip_plots(const std::filesystem::path& dir,
                               const std::vector<ScenarioRun>& runs);

/// Per configuration: Q_up and Q_dn heatmaps over (t, α), lettered a..d.
void emit_alpha_scan_plots(const std::filesystem::path& dir,
                           const std::vector<AlphaScanResult>& results);

}  // namespace hubring
