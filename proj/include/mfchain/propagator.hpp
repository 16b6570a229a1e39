// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "mfchain/sector_basis.hpp"
#include "mfchain/types.hpp"

namespace mfchain {

/// Eigenpairs of a sector Hamiltonian whose vacuum row/column is decoupled.
/// The vacuum is kept as its own 1x1 block so E^0 is exact and never mixes
/// with degenerate two-flip levels.
class SpectralDecomposition {
public:
	/// Throws DomainError if h is not square or couples the vacuum.
	explicit SpectralDecomposition(const Matrix& h);

	[[nodiscard]] const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
	[[nodiscard]] const Matrix& eigenvectors() const { return eigenvectors_; }
	[[nodiscard]] double vacuum_energy() const { return vacuum_energy_; }
	[[nodiscard]] Eigen::Index dimension() const { return eigenvalues_.size(); }

	/// V diag(lambda) V^dagger.
	[[nodiscard]] Matrix reconstruct() const;
	/// exp(-i H t).
	[[nodiscard]] Matrix propagator(double t) const;

private:
	Eigen::VectorXd eigenvalues_;
	Matrix eigenvectors_;
	double vacuum_energy_;
};

/// Amplitudes over a SectorBasis.
struct SectorState {
	Vector amplitudes;

	[[nodiscard]] double norm() const { return amplitudes.norm(); }
};

struct KickSchedule {
	double tau = 0.05;
	double e1 = 0.1;
	long n_max = 0;

	/// Kicks that fit in t_max: floor(t_max / tau), tolerant of float noise.
	static long kicks_within(double t_max, double tau);
};

/// (|0...0> + |N/2, N/2+1>) / sqrt(2).
SectorState initial_state(const SectorBasis& basis);

/// V exp(-i Lambda t) V^dagger state0.
SectorState evolve_continuous(const SpectralDecomposition& spec, const SectorState& state0, double t);

/// exp(-i t h) for Hermitian h, via its eigendecomposition.
Matrix hermitian_exponential(const Matrix& h, double t);

/// exp(-i e1 D).
Matrix kick_operator(const Matrix& chirality, double e1);

/// (u1 u0)^r state0: the state just after the r-th kick.
/// Closest unitary in the polar sense. Throws DomainError unless u is
/// unitary to 1e-8.
Matrix nearest_unitary(const Matrix& u);

SectorState evolve_kicked(const Matrix& u0, const Matrix& u1, const SectorState& state0, long r);

/// Visits the state after every kick r = 1..n (the callback gets r and the
/// state). Used for stroboscopic time series.
void for_each_kick(const Matrix& u0, const Matrix& u1, const SectorState& state0, long n,
                   const std::function<void(long, const SectorState&)>& visit);

/// sqrt(2) * amplitude on (1, N), i.e. <1,N|G|N/2,N/2+1>.
cplx transfer_amplitude(const SectorState& state, const SectorBasis& basis);

} // namespace mfchain
