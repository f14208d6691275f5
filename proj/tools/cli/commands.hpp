#pragma once

#include <iosfwd>

#include "config.hpp"

namespace hubplan::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kBestEffort = 2, kInfeasible = 3 };

/// Each command writes its files under `config.out`, prints progress to `log`
/// and returns an exit code. Input problems surface as exceptions derived
/// from hubplan::Error, which the caller maps to kInputError.
int cmd_scen_gen(const RunConfig& config, std::ostream& log);
int cmd_plan(const RunConfig& config, std::ostream& log);
int cmd_sweep(const RunConfig& config, std::ostream& log);
int cmd_export_mps(const RunConfig& config, std::ostream& log);
int cmd_validate(const RunConfig& config, std::ostream& log);

}  // namespace hubplan::cli
