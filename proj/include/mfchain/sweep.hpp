// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mfchain/hamiltonian.hpp"
#include "mfchain/metrics.hpp"
#include "mfchain/propagator.hpp"

namespace mfchain {

struct MultiferroicModel {
	ChainSpec chain;
	std::vector<ImpuritySpec> impurities;

	/// Chain with the impurity bond factors folded into chain.bonds.
	[[nodiscard]] ChainSpec effective_chain() const;
};

using Model = std::variant<MultiferroicModel, XXZSpec>;

int model_sites(const Model& model);

struct SweepGrid {
	double t_max = 1000.0;
	double dt_unkicked = 0.05;
	std::vector<double> tau_values;
	std::vector<double> e1_values;

	/// tau in {0.05, 0.10, ..., 2.00}, E1 in {0.05, 0.10, ..., 5.00}.
	static SweepGrid defaults();
	/// start, start+step, ... up to stop (inclusive within 1e-9).
	static std::vector<double> range(double start, double stop, double step);

	void validate() const;
};

struct Argmax {
	/// r * tau for kicked results, the sample time otherwise.
	double time = 0.0;
	double tau = 0.0;
	double e1 = 0.0;
	long kicks = 0;
};

/// Best f over kick counts at one (tau, E1).
struct GridPoint {
	double tau = 0.0;
	double e1 = 0.0;
	double f_max = 0.0;
	long kicks = 0;
};

/// Best f over kicks and tau at one E1.
struct E1Summary {
	double e1 = 0.0;
	double f_maxx = 0.0;
	double tau = 0.0;
	long kicks = 0;
};

/// f_max  : best over kicks at the winning (tau, E1)
/// f_maxx : best over kicks and tau at the winning E1
/// f_maxxx: best over everything swept
/// For a single (tau, E1) all three coincide; for unkicked runs they equal the
/// unkicked maximum over time.
struct SweepResult {
	double f_max = 0.0;
	double f_maxx = 0.0;
	double f_maxxx = 0.0;
	Argmax argmax;
	double unkicked_f_max = 0.0;
	double unkicked_time = 0.0;
	/// f_maxxx - unkicked_f_max
	double delta_vs_unkicked = 0.0;
	/// Ordered by (E1, tau) ascending.
	std::vector<GridPoint> surface;
	/// Ordered by E1 ascending.
	std::vector<E1Summary> per_e1;
};

/// max over t in {dt, 2dt, ..., t_max}; ties keep the earliest time.
SweepResult fmax_unkicked(const Model& model, const std::optional<EnvironmentSpec>& env, double t_max, double dt);

/// max over r in {1..n_max} at fixed (tau, E1). n_max == 0 means
/// floor(t_max / tau). The unkicked baseline uses settings.t_max/dt_unkicked.
SweepResult fmax_kicked(const Model& model, const std::optional<EnvironmentSpec>& env, const KickSchedule& schedule,
                        const SweepGrid& settings);

/// Maximizes additionally over settings.tau_values at a fixed E1.
SweepResult fmaxx(const Model& model, const std::optional<EnvironmentSpec>& env, double e1, const SweepGrid& settings,
                  int threads = 1);

/// Maximizes over kicks, tau and E1 on the grid.
SweepResult fmaxxx(const Model& model, const std::optional<EnvironmentSpec>& env, const SweepGrid& grid,
                   int threads = 1);

/// One evolution pass evaluated against several environments; the bath only
/// enters through r(t), so the Floquet dynamics is shared.
std::vector<SweepResult> fmaxxx_envs(const Model& model, std::span<const std::optional<EnvironmentSpec>> envs,
                                     const SweepGrid& grid, int threads = 1);

struct ImpurityRow {
	ImpurityKind kind = ImpurityKind::TypeI;
	double kappa = 1.0;
	double unkicked_f_max = 0.0;
	SweepResult kicked;
};

/// For each kappa, places identical impurities at `sites` and reports the
/// unkicked f_max and the kicked sweep.
std::vector<ImpurityRow> impurity_sweep(const ChainSpec& base, ImpurityKind kind, std::span<const double> kappas,
                                        std::span<const int> sites, const SweepGrid& grid, int threads = 1);

} // namespace mfchain
