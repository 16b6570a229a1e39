// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "mfchain/metrics.hpp"

namespace mfchain::oracle {

struct Check {
	std::string name;
	double residual = 0.0;
	double tolerance = 0.0;

	[[nodiscard]] bool passed() const { return residual <= tolerance; }
};

struct CheckParams {
	double j1 = 1.0;
	double j2 = -1.0;
	double e0 = 0.01;
	double tau = 0.1;
	double e1 = 0.1;
	double kappa = 1.4;
	std::vector<int> sizes{4, 6, 8};
	int env_system_sites = 6;
	EnvironmentSpec env{4, 0.3};
	int samples = 100;
	double t_end = 50.0;
	/// Flip the sign of E1 on the sector side only.
	bool corrupt_kick_sign = false;
};

/// Sector path against the dense reference at every size in params.sizes,
/// plus the bath-coupled chain.
std::vector<Check> run_checks(const CheckParams& params);

} // namespace mfchain::oracle
