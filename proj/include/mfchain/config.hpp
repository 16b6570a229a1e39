// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfchain/hamiltonian.hpp"
#include "mfchain/metrics.hpp"
#include "mfchain/sweep.hpp"

namespace mfchain::cli {

/// Bad config file: parse failure (with line/column) or a schema violation
/// (with the offending field path).
class ConfigError : public std::runtime_error {
public:
	explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ModelBlock {
	enum class Type { Multiferroic, XXZ };
	Type type = Type::Multiferroic;
	double j1 = 1.0;
	double j2 = -1.0;
	double e0 = 0.01;
	double jx = 1.0;
	double jz = 0.0;
	/// jz values for `compare` (ratios to jx).
	std::vector<double> jz_grid{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
};

struct ProtocolBlock {
	int n_sites = 16;
	double t_max = 1000.0;
	double dt = 0.05;
};

struct KickBlock {
	std::optional<double> tau;
	std::optional<double> e1;
	std::optional<long> n_max;
	std::vector<double> tau_grid = SweepGrid::defaults().tau_values;
	std::vector<double> e1_grid = SweepGrid::defaults().e1_values;
};

struct ImpurityBlock {
	std::vector<ImpurityKind> kinds{ImpurityKind::TypeI};
	std::vector<int> sites{4, 13};
	std::vector<double> kappa{1.0};
};

struct OutputBlock {
	std::string dir = ".";
	std::vector<std::string> formats{"csv", "json"};

	[[nodiscard]] bool wants(const std::string& fmt) const;
};

struct OracleBlock {
	/// Negates E1 on the sector path only (negative control).
	bool corrupt_kick_sign = false;
};

struct RunConfig {
	ModelBlock model;
	ProtocolBlock protocol;
	KickBlock kick;
	/// Present only when the config has an `environment` block.
	std::optional<EnvironmentSpec> environment;
	std::optional<ImpurityBlock> impurity;
	OutputBlock output;
	OracleBlock oracle;

	/// Chain with the impurity block applied at impurity.kappa.front().
	[[nodiscard]] ChainSpec chain() const;
	[[nodiscard]] XXZSpec xxz() const;
	[[nodiscard]] Model model_spec() const;
	[[nodiscard]] SweepGrid grid() const;
};

/// Parses and schema-validates a JSON config. Missing blocks take the
/// defaults above; unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

} // namespace mfchain::cli
