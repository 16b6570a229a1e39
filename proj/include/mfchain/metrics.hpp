// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>

#include "mfchain/propagator.hpp"
#include "mfchain/sector_basis.hpp"
#include "mfchain/types.hpp"

namespace mfchain {

/// P non-interacting bath spins, all up, coupled to every chain site with the
/// same constant g through (2 sum_i S_i^z) (x) (g sum_k S_k^z).
struct EnvironmentSpec {
	int p_sites = 20;
	double g = 0.0;
};

struct SingletResult {
	double time = 0.0;
	double f = 0.0;
	double fidelity = 0.0;
	/// |<1,N|G|mid>|^2
	double transfer_prob = 0.0;
	/// sum over type-4 pairs of |<j,j'|G|mid>|^2
	double type4_weight = 0.0;
	/// r(t); 1 without an environment.
	cplx env_factor{1.0, 0.0};
};

/// Amplitudes A_{j,j'} = <j,j'|G|mid> grouped by partial-trace type.
struct EndpointWeights {
	cplx end_amplitude;
	/// indexed by PairType; Type1 is |end_amplitude|^2
	std::array<double, 4> type_weight{};
	/// sum over 1<j<N of <j,N|G|mid> conj(<1,j|G|mid>); the |01><10| coherence
	cplx side_coherence;
};

/// Throws IntegrityError when |norm - 1| > 1e-6.
EndpointWeights endpoint_weights(const SectorState& state, const SectorBasis& basis);

/// f = 1/4 + w4/4 + |A|^2/4 + Re[e^{i E0 t} A r] / 2
inline double singlet_from_weights(double type4, cplx end_amplitude, double vacuum_energy, double t,
                                   cplx r = {1.0, 0.0})
{
	const cplx cross = std::polar(1.0, vacuum_energy * t) * end_amplitude * r;
	return 0.25 + 0.25 * type4 + 0.25 * std::norm(end_amplitude) + 0.5 * cross.real();
}

inline double fidelity_from_singlet(double f) { return (2.0 * f + 1.0) / 3.0; }

/// Singlet fraction of the end qubits (1, N) against (|00> + |11>)/sqrt(2).
SingletResult singlet_fraction(const SectorState& state, double vacuum_energy, double t, const SectorBasis& basis);

/// r(t) = exp(i P g t) for the all-up bath.
cplx env_phase_factor(const EnvironmentSpec& env, double t);

/// r(t) = sum_m p_m exp(2 i t B_m), B_m = sum_k (-1)^{m_k} g_k / 2.
/// `populations` has 2^P entries indexed by the bath bit string (site 1 most
/// significant, bit 1 = spin down).
cplx env_phase_factor(std::span<const double> couplings, std::span<const double> populations, double t);

SingletResult singlet_fraction_env(const SectorState& state, double vacuum_energy, double t, const SectorBasis& basis,
                                   const EnvironmentSpec& env);

/// Reduced state of sites (1, N) in the basis {|00>, |01>, |10>, |11>}, the
/// first label being site 1.
Eigen::Matrix4cd rho_out(const SectorState& state, double vacuum_energy, double t, const SectorBasis& basis,
                         const std::optional<EnvironmentSpec>& env = std::nullopt);

/// <Omega^00| rho |Omega^00>.
double bell_overlap(const Eigen::Matrix4cd& rho);

/// Largest overlap with any of the four Bell states. Diagnostic only.
double max_bell_fraction(const Eigen::Matrix4cd& rho);

} // namespace mfchain
