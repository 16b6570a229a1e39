// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>

#include "mfchain/hamiltonian.hpp"
#include "mfchain/metrics.hpp"
#include "mfchain/sector_basis.hpp"
#include "mfchain/types.hpp"

/// Brute-force reference built from Kronecker products of Pauli matrices over
/// the full 2^N (or 2^(N+P)) space. Nothing here uses the sector machinery
/// except embed/project, which translate between the two index spaces.
///
/// Bit convention: site 1 is the most significant bit; bit value 1 means the
/// spin is flipped (down). Bath sites follow the chain sites.
namespace mfchain::oracle {

inline constexpr int kMaxSpins = 14;

/// State over the chain (+ optional bath).
struct FullState {
	Vector amplitudes;
	int n_system = 0;
	int n_env = 0;
};

/// Single-site spin-1/2 operator placed on `site` (1-based) of n spins.
Matrix site_operator(const Eigen::Matrix2cd& op, int site, int n_spins);

/// Weight w of the chain factor in the bath coupling w (sum_i S_i^z) (x)
/// (g sum_k S_k^z). With w = 1 the vacuum and two-flip sectors split by 2B_m,
/// which is what r(t) = sum_m |c_m|^2 exp(2 i t B_m) describes; the literal
/// 2 sum_i S_i^z splits them by 4B_m, i.e. the same r(t) at doubled g.
inline constexpr double kClosedFormChainWeight = 1.0;
inline constexpr double kLiteralChainWeight = 2.0;

/// Chain Hamiltonian H0 (tensored with the identity on the bath) plus the
/// bath coupling when env is given. The bath has no self-Hamiltonian.
Matrix full_hamiltonian(const ChainSpec& spec, const std::optional<EnvironmentSpec>& env = std::nullopt,
                        double chain_weight = kClosedFormChainWeight);
Matrix full_hamiltonian(const XXZSpec& spec, const std::optional<EnvironmentSpec>& env = std::nullopt,
                        double chain_weight = kClosedFormChainWeight);

/// chain_weight * (sum_i S_i^z) (x) (g sum_k S_k^z) over N + P spins.
Matrix full_env_coupling(int n_system, const EnvironmentSpec& env, double chain_weight = kClosedFormChainWeight);

/// sum_i (S_i x S_{i+1})^z on the chain, identity on n_env bath spins.
Matrix full_chirality(int n_system, int n_env = 0);

/// Total S^z of the chain, identity on n_env bath spins.
Matrix full_magnetization(int n_system, int n_env = 0);

/// Full-space index of a sector basis vector (bath all up).
Eigen::Index full_index(const SectorBasis& basis, std::size_t sector_index, int n_env = 0);

/// Sector amplitudes placed into the full space, bath all up.
FullState embed(const SectorBasis& basis, const Vector& sector_amplitudes, int n_env = 0);

/// Sector components of a full chain state (n_env must be 0).
Vector project_state(const SectorBasis& basis, const FullState& state);

/// P^dagger A P for the isometry P spanning the sector.
Matrix project_to_sector(const Matrix& full, const SectorBasis& basis);

/// Bell pair on the two middle sites, rest up, bath in `env_state` (all up
/// when omitted).
FullState initial_state(int n_system, int n_env = 0, const std::optional<Vector>& env_state = std::nullopt);

/// Dense exp(-iHt) engine reused across many times.
class FullEvolver {
public:
	explicit FullEvolver(const Matrix& h);
	[[nodiscard]] FullState evolve(const FullState& s, double t) const;
	[[nodiscard]] Matrix propagator(double t) const;

private:
	Eigen::VectorXd eigenvalues_;
	Matrix eigenvectors_;
};

/// (u1 u0)^r applied to the state.
FullState full_kicked(const Matrix& u0, const Matrix& u1, const FullState& s, long r);

/// Reduced density matrix of the kept sites (1-based positions among all
/// n_spins); the kept sites' bits are ordered as listed, first most
/// significant.
Matrix partial_trace(const Vector& psi, int n_spins, std::span<const int> keep);

/// Reduced state of chain sites (1, N) after tracing the bulk and the bath.
Eigen::Matrix4cd rho_out(const FullState& s);

/// <Omega^00| rho_out |Omega^00>.
double singlet_fraction(const FullState& s);

} // namespace mfchain::oracle
