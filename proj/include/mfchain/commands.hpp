// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "mfchain/config.hpp"

namespace mfchain::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kIntegrityError = 3, kOracleFailure = 4 };

struct CommandOptions {
	int threads = 1;
	/// Overrides output.dir when set.
	std::optional<std::string> out_dir;
};

int cmd_evolve(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_impurity(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_compare(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_oracle_check(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);

using Command = std::function<int(const RunConfig&, const CommandOptions&, std::ostream&)>;

/// Loads the config (defaults when path is empty), runs cmd and maps
/// exceptions to exit codes.
int run_guarded(const Command& cmd, const std::string& config_path, const CommandOptions& opt, std::ostream& log,
                std::ostream& err);

} // namespace mfchain::cli
