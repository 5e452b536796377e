#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "torus_qpt/config.hpp"

namespace tqpt {

enum ExitCode : int { kExitOk = 0, kExitCheckFailure = 1, kExitConfigError = 2 };

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
  std::string summary;  // human-readable, printed by the CLI
};

/// Band structure of one ring against eta: spectrum.csv (eta,e1..eN).
CommandResult cmd_spectrum(const RunConfig& config);
/// sweep.csv and sweep_summary.json.
CommandResult cmd_sweep(const RunConfig& config);
/// scaling.json.
CommandResult cmd_scaling(const RunConfig& config);
/// fidelity.csv.
CommandResult cmd_fidelity(const RunConfig& config);
/// square_N<N>.csv per N and square_report.json; exit 1 if the peak ratio exceeds 2.
CommandResult cmd_square(const RunConfig& config);
/// validate.json; exit 1 if any check fails.
CommandResult cmd_validate(const RunConfig& config);

/// Dispatches on config.command. Config errors surface as ConfigError.
CommandResult run_command(const RunConfig& config);

/// Ring selected by a spectrum or fidelity block: an explicit lambda, or the
/// momentum mode m of the model's torus.
double selected_lambda(const ModelSpec& model, std::optional<int> mode, std::optional<double> lambda,
                       double fallback);

}  // namespace tqpt
