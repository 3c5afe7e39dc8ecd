#pragma once

// Subcommands of the command-line front end, callable in-process.

#include "frsne/core_types.hpp"
#include "frsne/run_config.hpp"
#include "frsne/twobody.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>

#include <json.hpp>

namespace frsne {

/// Stable process exit codes.
enum ExitCode : int {
  exit_success = 0,
  exit_not_converged = 2,
  exit_config_error = 3,
  exit_instability = 4,
};

/// relax: writes spread_vs_time.csv, stationary_profile.csv, report.json, meta.json.
int cmd_relax(const RunConfig& cfg, std::ostream& log);

/// sweep-alpha: writes geff_vs_alpha.csv and meta.json.
int cmd_sweep_alpha(const RunConfig& cfg, std::ostream& log);

/// twobody: writes twobody.json and meta.json. Reuses cfg.profile when set,
/// otherwise relaxes first.
int cmd_twobody(const RunConfig& cfg, std::ostream& log);

// File formats.

void write_series_csv(const std::filesystem::path& path, std::span<const ObservableRecord> series);

/// Columns r, abs_psi_sq, phase. The phase is the unwrapped chi inside the
/// amplitude-floor region and the wrapped arg(psi) beyond it.
void write_profile_csv(const std::filesystem::path& path, const RadialWavefunction& psi);

/// Inverse of write_profile_csv; reconstructs the grid from the r column.
RadialWavefunction read_profile_csv(const std::filesystem::path& path);

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);

nlohmann::json report_json(const StationaryReport& report, const PhysicsParams& params);

} // namespace frsne
