// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/propagator.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mfchain {

SpectralDecomposition::SpectralDecomposition(const Matrix& h)
{
	const Eigen::Index dim = h.rows();
	if(dim < 2 || h.cols() != dim) {
		throw DomainError("spectral decomposition needs a square sector matrix");
	}
	const Eigen::Index rest = dim - 1;
	if(h.col(0).tail(rest).cwiseAbs().maxCoeff() > 0.0 || h.row(0).tail(rest).cwiseAbs().maxCoeff() > 0.0) {
		throw DomainError("sector matrix couples the vacuum to flip pairs");
	}
	vacuum_energy_ = h(0, 0).real();

	const Eigen::SelfAdjointEigenSolver<Matrix> es(h.bottomRightCorner(rest, rest));
	if(es.info() != Eigen::Success) {
		throw DomainError("eigensolver failed on sector matrix");
	}
	eigenvalues_.resize(dim);
	eigenvalues_(0) = vacuum_energy_;
	eigenvalues_.tail(rest) = es.eigenvalues();
	eigenvectors_ = Matrix::Zero(dim, dim);
	eigenvectors_(0, 0) = 1.0;
	eigenvectors_.bottomRightCorner(rest, rest) = es.eigenvectors();
}

Matrix SpectralDecomposition::reconstruct() const
{
	return eigenvectors_ * eigenvalues_.cast<cplx>().asDiagonal() * eigenvectors_.adjoint();
}

Matrix SpectralDecomposition::propagator(double t) const
{
	const Vector phases = (eigenvalues_ * (-t)).unaryExpr([](double a) { return std::polar(1.0, a); });
	return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

long KickSchedule::kicks_within(double t_max, double tau)
{
	if(!(tau > 0.0)) {
		throw DomainError("kick period must be positive");
	}
	return static_cast<long>(std::floor(t_max / tau + 1e-9));
}

SectorState initial_state(const SectorBasis& basis)
{
	SectorState s{Vector::Zero(static_cast<Eigen::Index>(basis.dimension()))};
	const double amp = 1.0 / std::sqrt(2.0);
	s.amplitudes(SectorBasis::kVacuum) = amp;
	s.amplitudes(static_cast<Eigen::Index>(basis.index_of(basis.middle_pair()))) = amp;
	return s;
}

SectorState evolve_continuous(const SpectralDecomposition& spec, const SectorState& state0, double t)
{
	if(state0.amplitudes.size() != spec.dimension()) {
		throw DomainError("state and decomposition dimensions differ");
	}
	const Matrix& v = spec.eigenvectors();
	Vector coeffs = v.adjoint() * state0.amplitudes;
	for(Eigen::Index k = 0; k < coeffs.size(); ++k) {
		coeffs(k) *= std::polar(1.0, -spec.eigenvalues()(k) * t);
	}
	return {v * coeffs};
}

Matrix hermitian_exponential(const Matrix& h, double t)
{
	const Eigen::SelfAdjointEigenSolver<Matrix> es(h);
	if(es.info() != Eigen::Success) {
		throw DomainError("eigensolver failed");
	}
	const Vector phases = (es.eigenvalues() * (-t)).unaryExpr([](double a) { return std::polar(1.0, a); });
	return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix kick_operator(const Matrix& chirality, double e1)
{
	if(e1 == 0.0) {
		return Matrix::Identity(chirality.rows(), chirality.cols());
	}
	return hermitian_exponential(chirality, e1);
}

Matrix nearest_unitary(const Matrix& u)
{
	const auto n = u.rows();
	if(u.cols() != n || (u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8) {
		throw DomainError("matrix is not unitary");
	}
	const Eigen::BDCSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
	return svd.matrixU() * svd.matrixV().adjoint();
}

SectorState evolve_kicked(const Matrix& u0, const Matrix& u1, const SectorState& state0, long r)
{
	if(r < 0) {
		throw DomainError("kick count must be non-negative");
	}
	SectorState s = state0;
	if(r == 0) {
		return s;
	}
	const Matrix step = nearest_unitary(u1 * u0);
	Vector tmp(s.amplitudes.size());
	for(long k = 0; k < r; ++k) {
		tmp.noalias() = step * s.amplitudes;
		s.amplitudes.swap(tmp);
	}
	return s;
}

void for_each_kick(const Matrix& u0, const Matrix& u1, const SectorState& state0, long n,
                   const std::function<void(long, const SectorState&)>& visit)
{
	const Matrix step = nearest_unitary(u1 * u0);
	SectorState s = state0;
	Vector tmp(s.amplitudes.size());
	for(long r = 1; r <= n; ++r) {
		tmp.noalias() = step * s.amplitudes;
		s.amplitudes.swap(tmp);
		visit(r, s);
	}
}

cplx transfer_amplitude(const SectorState& state, const SectorBasis& basis)
{
	return std::sqrt(2.0) * state.amplitudes(static_cast<Eigen::Index>(basis.index_of(basis.end_pair())));
}

} // namespace mfchain
