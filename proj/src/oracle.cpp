// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/oracle.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

namespace mfchain::oracle {

namespace {

using Op2 = Eigen::Matrix2cd;

Op2 spin_x()
{
	Op2 m;
	m << 0.0, 0.5, 0.5, 0.0;
	return m;
}

Op2 spin_y()
{
	Op2 m;
	m << 0.0, cplx(0.0, -0.5), cplx(0.0, 0.5), 0.0;
	return m;
}

Op2 spin_z()
{
	Op2 m;
	m << 0.5, 0.0, 0.0, -0.5;
	return m;
}

void check_size(int n_spins)
{
	if(n_spins < 1 || n_spins > kMaxSpins) {
		throw ResourceError("dense oracle supports at most " + std::to_string(kMaxSpins) + " spins, asked for " +
		                    std::to_string(n_spins));
	}
}

Matrix kron(const Matrix& a, const Matrix& b)
{
	Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
	for(Eigen::Index i = 0; i < a.rows(); ++i) {
		for(Eigen::Index j = 0; j < a.cols(); ++j) {
			out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
		}
	}
	return out;
}

// Tensor product over n spins with the given factors on their (1-based)
// sites and identities elsewhere.
Matrix product_operator(const std::vector<std::pair<int, Op2>>& factors, int n_spins)
{
	Matrix out = Matrix::Identity(1, 1);
	for(int s = 1; s <= n_spins; ++s) {
		Op2 f = Op2::Identity();
		for(const auto& [site, op] : factors) {
			if(site == s) {
				f = op * f;
			}
		}
		out = kron(out, f);
	}
	return out;
}

Matrix heisenberg(int a, int b, int n)
{
	return product_operator({{a, spin_x()}, {b, spin_x()}}, n) + product_operator({{a, spin_y()}, {b, spin_y()}}, n) +
	       product_operator({{a, spin_z()}, {b, spin_z()}}, n);
}

Matrix chain_hamiltonian(const ChainSpec& spec, int n)
{
	spec.validate();
	const auto dim = Eigen::Index{1} << n;
	Matrix h = Matrix::Zero(dim, dim);
	for(int i = 1; i <= spec.n_sites - 1; ++i) {
		h -= spec.j1 * spec.bonds.nn(i) * heisenberg(i, i + 1, n);
	}
	for(int i = 1; i <= spec.n_sites - 2; ++i) {
		h -= spec.j2 * spec.bonds.nnn(i) * heisenberg(i, i + 2, n);
	}
	h += spec.e0 * full_chirality(spec.n_sites, n - spec.n_sites);
	return h;
}

} // namespace

Matrix site_operator(const Eigen::Matrix2cd& op, int site, int n_spins)
{
	check_size(n_spins);
	return product_operator({{site, op}}, n_spins);
}

Matrix full_chirality(int n_system, int n_env)
{
	const int n = n_system + n_env;
	check_size(n);
	const auto dim = Eigen::Index{1} << n;
	Matrix d = Matrix::Zero(dim, dim);
	for(int i = 1; i <= n_system - 1; ++i) {
		d += product_operator({{i, spin_x()}, {i + 1, spin_y()}}, n);
		d -= product_operator({{i, spin_y()}, {i + 1, spin_x()}}, n);
	}
	return d;
}

Matrix full_magnetization(int n_system, int n_env)
{
	const int n = n_system + n_env;
	check_size(n);
	const auto dim = Eigen::Index{1} << n;
	Matrix m = Matrix::Zero(dim, dim);
	for(int i = 1; i <= n_system; ++i) {
		m += product_operator({{i, spin_z()}}, n);
	}
	return m;
}

Matrix full_env_coupling(int n_system, const EnvironmentSpec& env, double chain_weight)
{
	const int n = n_system + env.p_sites;
	check_size(n);
	const auto dim = Eigen::Index{1} << n;
	Matrix h = Matrix::Zero(dim, dim);
	for(int i = 1; i <= n_system; ++i) {
		for(int k = 1; k <= env.p_sites; ++k) {
			h += chain_weight * env.g * product_operator({{i, spin_z()}, {n_system + k, spin_z()}}, n);
		}
	}
	return h;
}

Matrix full_hamiltonian(const ChainSpec& spec, const std::optional<EnvironmentSpec>& env, double chain_weight)
{
	const int n = spec.n_sites + (env ? env->p_sites : 0);
	check_size(n);
	Matrix h = chain_hamiltonian(spec, n);
	if(env) {
		h += full_env_coupling(spec.n_sites, *env, chain_weight);
	}
	return h;
}

Matrix full_hamiltonian(const XXZSpec& spec, const std::optional<EnvironmentSpec>& env, double chain_weight)
{
	const int n = spec.n_sites + (env ? env->p_sites : 0);
	check_size(n);
	const auto dim = Eigen::Index{1} << n;
	Matrix h = Matrix::Zero(dim, dim);
	for(int i = 1; i <= spec.n_sites - 1; ++i) {
		h += spec.jx * (product_operator({{i, spin_x()}, {i + 1, spin_x()}}, n) +
		                product_operator({{i, spin_y()}, {i + 1, spin_y()}}, n));
		h += spec.jz * product_operator({{i, spin_z()}, {i + 1, spin_z()}}, n);
	}
	if(env) {
		h += full_env_coupling(spec.n_sites, *env, chain_weight);
	}
	return h;
}

Eigen::Index full_index(const SectorBasis& basis, std::size_t sector_index, int n_env)
{
	const int n = basis.n_sites() + n_env;
	const auto p = basis.pair_of(sector_index);
	if(!p) {
		return 0;
	}
	return (Eigen::Index{1} << (n - p->j)) | (Eigen::Index{1} << (n - p->jp));
}

FullState embed(const SectorBasis& basis, const Vector& sector_amplitudes, int n_env)
{
	const int n = basis.n_sites() + n_env;
	check_size(n);
	if(sector_amplitudes.size() != static_cast<Eigen::Index>(basis.dimension())) {
		throw DomainError("sector vector has wrong dimension");
	}
	FullState s{Vector::Zero(Eigen::Index{1} << n), basis.n_sites(), n_env};
	for(std::size_t k = 0; k < basis.dimension(); ++k) {
		s.amplitudes(full_index(basis, k, n_env)) = sector_amplitudes(static_cast<Eigen::Index>(k));
	}
	return s;
}

Vector project_state(const SectorBasis& basis, const FullState& state)
{
	if(state.n_env != 0 || state.n_system != basis.n_sites()) {
		throw DomainError("projection needs a bare chain state of matching length");
	}
	Vector out(static_cast<Eigen::Index>(basis.dimension()));
	for(std::size_t k = 0; k < basis.dimension(); ++k) {
		out(static_cast<Eigen::Index>(k)) = state.amplitudes(full_index(basis, k));
	}
	return out;
}

Matrix project_to_sector(const Matrix& full, const SectorBasis& basis)
{
	const auto dim = static_cast<Eigen::Index>(basis.dimension());
	if(full.rows() != (Eigen::Index{1} << basis.n_sites())) {
		throw DomainError("full operator does not act on the chain space");
	}
	Matrix out(dim, dim);
	for(Eigen::Index a = 0; a < dim; ++a) {
		for(Eigen::Index b = 0; b < dim; ++b) {
			out(a, b) = full(full_index(basis, static_cast<std::size_t>(a)), full_index(basis, static_cast<std::size_t>(b)));
		}
	}
	return out;
}

FullState initial_state(int n_system, int n_env, const std::optional<Vector>& env_state)
{
	const int n = n_system + n_env;
	check_size(n);
	if(n_system < 4 || n_system % 2 != 0) {
		throw DomainError("chain length must be even and >= 4");
	}
	Vector chain = Vector::Zero(Eigen::Index{1} << n_system);
	const int mid = n_system / 2;
	chain(0) = 1.0 / std::sqrt(2.0);
	chain((Eigen::Index{1} << (n_system - mid)) | (Eigen::Index{1} << (n_system - mid - 1))) = 1.0 / std::sqrt(2.0);

	Vector bath = Vector::Zero(Eigen::Index{1} << n_env);
	if(env_state) {
		if(env_state->size() != bath.size()) {
			throw DomainError("bath state has wrong dimension");
		}
		bath = *env_state;
	} else {
		bath(0) = 1.0;
	}
	FullState s{Vector(chain.size() * bath.size()), n_system, n_env};
	for(Eigen::Index a = 0; a < chain.size(); ++a) {
		s.amplitudes.segment(a * bath.size(), bath.size()) = chain(a) * bath;
	}
	return s;
}

FullEvolver::FullEvolver(const Matrix& h)
{
	const Eigen::SelfAdjointEigenSolver<Matrix> es(h);
	if(es.info() != Eigen::Success) {
		throw DomainError("eigensolver failed on full Hamiltonian");
	}
	eigenvalues_ = es.eigenvalues();
	eigenvectors_ = es.eigenvectors();
}

FullState FullEvolver::evolve(const FullState& s, double t) const
{
	Vector c = eigenvectors_.adjoint() * s.amplitudes;
	for(Eigen::Index k = 0; k < c.size(); ++k) {
		c(k) *= std::polar(1.0, -eigenvalues_(k) * t);
	}
	return {eigenvectors_ * c, s.n_system, s.n_env};
}

Matrix FullEvolver::propagator(double t) const
{
	const Vector phases = (eigenvalues_ * (-t)).unaryExpr([](double a) { return std::polar(1.0, a); });
	return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

FullState full_kicked(const Matrix& u0, const Matrix& u1, const FullState& s, long r)
{
	FullState out = s;
	Vector tmp(out.amplitudes.size());
	for(long k = 0; k < r; ++k) {
		tmp.noalias() = u0 * out.amplitudes;
		out.amplitudes.noalias() = u1 * tmp;
	}
	return out;
}

Matrix partial_trace(const Vector& psi, int n_spins, std::span<const int> keep)
{
	check_size(n_spins);
	if(psi.size() != (Eigen::Index{1} << n_spins)) {
		throw DomainError("state length is not 2^n");
	}
	std::vector<bool> kept(static_cast<std::size_t>(n_spins) + 1, false);
	for(int s : keep) {
		if(s < 1 || s > n_spins || kept[static_cast<std::size_t>(s)]) {
			throw DomainError("invalid or repeated kept site");
		}
		kept[static_cast<std::size_t>(s)] = true;
	}
	const auto k = static_cast<int>(keep.size());
	const int traced = n_spins - k;
	Matrix amps = Matrix::Zero(Eigen::Index{1} << k, Eigen::Index{1} << traced);
	for(Eigen::Index i = 0; i < psi.size(); ++i) {
		Eigen::Index a = 0;
		for(int s : keep) {
			a = (a << 1) | ((i >> (n_spins - s)) & 1);
		}
		Eigen::Index e = 0;
		for(int s = 1; s <= n_spins; ++s) {
			if(!kept[static_cast<std::size_t>(s)]) {
				e = (e << 1) | ((i >> (n_spins - s)) & 1);
			}
		}
		amps(a, e) = psi(i);
	}
	return amps * amps.adjoint();
}

Eigen::Matrix4cd rho_out(const FullState& s)
{
	const int keep[2] = {1, s.n_system};
	return partial_trace(s.amplitudes, s.n_system + s.n_env, keep);
}

double singlet_fraction(const FullState& s)
{
	const double h = 1.0 / std::sqrt(2.0);
	const Eigen::Vector4cd omega(h, 0.0, 0.0, h);
	return (omega.adjoint() * rho_out(s) * omega)(0).real();
}

} // namespace mfchain::oracle
