// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "mfchain/oracle.hpp"
#include "mfchain/validation.hpp"

using namespace mfchain;
using doctest::Approx;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

ChainSpec chain(int n)
{
	ChainSpec c;
	c.n_sites = n;
	return c;
}

} // namespace

TEST_CASE("magnetization commutes with H0")
{
	for(int n : {4, 6, 8}) {
		const Matrix h = oracle::full_hamiltonian(chain(n));
		const Matrix m = oracle::full_magnetization(n);
		CHECK(max_abs(h * m - m * h) < 1e-12);
	}
}

TEST_CASE("all-up state energy at N=4")
{
	ChainSpec c = chain(4);
	c.e0 = 0.0;
	const Matrix h = oracle::full_hamiltonian(c);
	CHECK(h(0, 0).real() == Approx(-0.25));
	// the all-up state is an eigenvector
	CHECK(h.col(0).tail(h.rows() - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bath coupling is diagonal")
{
	const Matrix c = oracle::full_env_coupling(4, {3, 0.7});
	CHECK(max_abs(c - Matrix(c.diagonal().asDiagonal())) == 0.0);
	CHECK(max_abs(c - c.adjoint()) == 0.0);
}

TEST_CASE("embed and project round trip")
{
	const SectorBasis b(6);
	Vector v = Vector::Random(static_cast<Eigen::Index>(b.dimension()));
	v.normalize();
	CHECK(oracle::embed(b, v, 2).amplitudes.size() == (1 << 8));
	const auto full = oracle::embed(b, v);
	CHECK(full.amplitudes.norm() == Approx(1.0));
	CHECK(max_abs(oracle::project_state(b, full) - v) == 0.0);
	// site 1 is the most significant bit, flipped spins are set bits
	CHECK(oracle::full_index(b, b.index_of({1, 6})) == ((1 << 5) | 1));
	CHECK(oracle::full_index(b, SectorBasis::kVacuum) == 0);
}

TEST_CASE("partial trace of a product state")
{
	// |0> on sites 1 and 3, |1> on site 2
	Vector psi = Vector::Zero(8);
	psi(0b010) = 1.0;
	const int keep12[2] = {1, 2};
	const Matrix rho = oracle::partial_trace(psi, 3, keep12);
	CHECK(rho.rows() == 4);
	CHECK(std::abs(rho(1, 1) - 1.0) < 1e-15);
	CHECK(std::abs(rho.trace() - 1.0) < 1e-15);
	const int keep3[1] = {3};
	const Matrix rho3 = oracle::partial_trace(psi, 3, keep3);
	CHECK(std::abs(rho3(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("partial trace of a Bell pair")
{
	Vector psi = Vector::Zero(8);
	psi(0b000) = psi(0b101) = 1.0 / std::sqrt(2.0);
	const int keep[2] = {1, 3};
	const Matrix rho = oracle::partial_trace(psi, 3, keep);
	CHECK(std::abs(rho(0, 3) - 0.5) < 1e-15);
	CHECK(std::abs(rho(3, 0) - 0.5) < 1e-15);
	const int one[1] = {1};
	const Matrix mixed = oracle::partial_trace(psi, 3, one);
	CHECK(max_abs(mixed - 0.5 * Matrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("dense reference refuses oversized systems")
{
	CHECK_THROWS_AS(oracle::full_hamiltonian(chain(16)), ResourceError);
	CHECK_THROWS_AS(oracle::full_hamiltonian(chain(10), EnvironmentSpec{6, 0.1}), ResourceError);
}

TEST_CASE("literal bath prefactor equals the closed form at doubled g")
{
	const int n = 4;
	const EnvironmentSpec env{3, 0.25};
	const SectorBasis b(n);
	const SpectralDecomposition sd(build_h0_sector(chain(n), b));
	const oracle::FullEvolver literal(oracle::full_hamiltonian(chain(n), env, oracle::kLiteralChainWeight));
	const oracle::FullEvolver closed(oracle::full_hamiltonian(chain(n), env, oracle::kClosedFormChainWeight));
	const auto f0 = oracle::initial_state(n, env.p_sites);
	for(double t : {0.3, 2.0, 9.5}) {
		const auto st = evolve_continuous(sd, initial_state(b), t);
		const double doubled = singlet_fraction_env(st, sd.vacuum_energy(), t, b, {env.p_sites, 2.0 * env.g}).f;
		const double same = singlet_fraction_env(st, sd.vacuum_energy(), t, b, env).f;
		CHECK(std::abs(oracle::singlet_fraction(literal.evolve(f0, t)) - doubled) < 1e-10);
		CHECK(std::abs(oracle::singlet_fraction(closed.evolve(f0, t)) - same) < 1e-10);
	}
}

TEST_CASE("superposed bath with site-dependent couplings")
{
	const int n = 4;
	const int p = 2;
	const SectorBasis b(n);
	const SpectralDecomposition sd(build_h0_sector(chain(n), b));
	const std::vector<double> g{0.3, 0.8};
	Vector bath(4);
	bath << 0.6, cplx(0.0, 0.48), 0.64, 0.0;
	bath.normalize();
	std::vector<double> pops(4);
	for(Eigen::Index m = 0; m < 4; ++m) {
		pops[static_cast<std::size_t>(m)] = std::norm(bath(m));
	}
	Eigen::Matrix2cd sz = Eigen::Matrix2cd::Zero();
	sz(0, 0) = 0.5;
	sz(1, 1) = -0.5;
	Matrix h = oracle::full_hamiltonian(chain(n), EnvironmentSpec{p, 0.0});
	for(int i = 1; i <= n; ++i) {
		for(int k = 1; k <= p; ++k) {
			h += g[static_cast<std::size_t>(k - 1)] * oracle::site_operator(sz, i, n + p) *
			     oracle::site_operator(sz, n + k, n + p);
		}
	}
	const oracle::FullEvolver full(h);
	const auto f0 = oracle::initial_state(n, p, bath);
	for(double t : {0.5, 4.0, 13.0}) {
		const auto st = evolve_continuous(sd, initial_state(b), t);
		const auto w = endpoint_weights(st, b);
		const cplx r = env_phase_factor(g, pops, t);
		const double f = singlet_from_weights(w.type_weight[3], w.end_amplitude, sd.vacuum_energy(), t, r);
		CHECK(std::abs(oracle::singlet_fraction(full.evolve(f0, t)) - f) < 1e-10);
	}
}

TEST_CASE("validation suite passes and the negative control fails")
{
	oracle::CheckParams p;
	p.sizes = {4, 6};
	p.samples = 20;
	for(const auto& c : oracle::run_checks(p)) {
		INFO(c.name << " residual " << c.residual);
		CHECK(c.passed());
	}
	p.corrupt_kick_sign = true;
	int kicked_failures = 0;
	for(const auto& c : oracle::run_checks(p)) {
		if(c.name.find("kicked") != std::string::npos && !c.passed()) {
			++kicked_failures;
		}
	}
	CHECK(kicked_failures == 3);
}
