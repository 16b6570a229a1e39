// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "mfchain/hamiltonian.hpp"
#include "mfchain/oracle.hpp"
#include "mfchain/propagator.hpp"

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

TEST_CASE("initial state")
{
	const SectorBasis b4(4);
	const auto s = initial_state(b4);
	CHECK(s.norm() == Approx(1.0));
	CHECK(std::abs(s.amplitudes(0)) == Approx(1.0 / std::sqrt(2.0)));
	CHECK(std::abs(s.amplitudes(static_cast<Eigen::Index>(b4.index_of({2, 3})))) == Approx(1.0 / std::sqrt(2.0)));

	const SectorBasis b16(16);
	const auto s16 = initial_state(b16);
	int nonzero = 0;
	for(Eigen::Index k = 0; k < s16.amplitudes.size(); ++k) {
		nonzero += s16.amplitudes(k) != cplx{} ? 1 : 0;
	}
	CHECK(nonzero == 2);
	CHECK(s16.amplitudes(static_cast<Eigen::Index>(b16.index_of({8, 9}))) != cplx{});
}

TEST_CASE("spectral decomposition")
{
	const SectorBasis b(8);
	const Matrix h = build_h0_sector(chain(8), b);
	const SpectralDecomposition sd(h);
	CHECK(max_abs(sd.reconstruct() - h) < 1e-12);
	CHECK(sd.vacuum_energy() == Approx(h(0, 0).real()));
	const Matrix u = sd.propagator(3.3);
	CHECK(max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) < 1e-12);
	CHECK(max_abs(sd.propagator(0.0) - Matrix::Identity(u.rows(), u.cols())) < 1e-12);
	CHECK(max_abs(sd.propagator(1.0) * sd.propagator(2.0) - sd.propagator(3.0)) < 1e-12);

	Matrix coupled = h;
	coupled(0, 1) = coupled(1, 0) = 0.1;
	CHECK_THROWS_AS(SpectralDecomposition{coupled}, DomainError);
}

TEST_CASE("continuous evolution")
{
	const SectorBasis b(6);
	const SpectralDecomposition sd(build_h0_sector(chain(6), b));
	const auto s0 = initial_state(b);
	CHECK(max_abs(evolve_continuous(sd, s0, 0.0).amplitudes - s0.amplitudes) < 1e-14);
	for(double t : {0.5, 17.0, 403.0}) {
		const auto s = evolve_continuous(sd, s0, t);
		CHECK(s.norm() == Approx(1.0).epsilon(1e-12));
		CHECK(std::abs(s.amplitudes(0)) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
	}

	const oracle::FullEvolver full(oracle::full_hamiltonian(chain(6)));
	const auto ref = full.evolve(oracle::initial_state(6), 5.0);
	CHECK(max_abs(oracle::project_state(b, ref) - evolve_continuous(sd, s0, 5.0).amplitudes) < 1e-8);
}

TEST_CASE("kick operator")
{
	const SectorBasis b(6);
	const Matrix d = build_chirality_sector(chain(6), b);
	const auto dim = d.rows();
	CHECK(max_abs(kick_operator(d, 0.0) - Matrix::Identity(dim, dim)) == 0.0);
	const Matrix u1 = kick_operator(d, 0.1);
	CHECK(max_abs(u1.adjoint() * u1 - Matrix::Identity(dim, dim)) < 1e-10);
	const Matrix ref = oracle::project_to_sector(oracle::FullEvolver(oracle::full_chirality(6)).propagator(0.1), b);
	CHECK(max_abs(u1 - ref) < 1e-10);
}

TEST_CASE("kicked evolution")
{
	const SectorBasis b(8);
	const ChainSpec c = chain(8);
	const SpectralDecomposition sd(build_h0_sector(c, b));
	const Matrix d = build_chirality_sector(c, b);
	const auto s0 = initial_state(b);
	const double tau = 0.1;
	const Matrix u0 = sd.propagator(tau);

	CHECK(max_abs(evolve_kicked(u0, kick_operator(d, 0.3), s0, 0).amplitudes - s0.amplitudes) == 0.0);

	const Matrix id = kick_operator(d, 0.0);
	for(long r : {1L, 7L, 250L}) {
		const auto kicked = evolve_kicked(u0, id, s0, r);
		const auto cont = evolve_continuous(sd, s0, static_cast<double>(r) * tau);
		CHECK(max_abs(kicked.amplitudes - cont.amplitudes) < 1e-10);
	}

	const Matrix u1 = kick_operator(d, 2.5);
	auto s = s0;
	for_each_kick(u0, u1, s0, 300, [&](long r, const SectorState& st) {
		s = st;
		if(r % 50 == 0) {
			CHECK(st.norm() == Approx(1.0).epsilon(1e-10));
		}
	});
	CHECK(max_abs(s.amplitudes - evolve_kicked(u0, u1, s0, 300).amplitudes) < 1e-10);
}

TEST_CASE("transfer amplitude")
{
	const SectorBasis b(6);
	const SpectralDecomposition sd(build_h0_sector(chain(6), b));
	const auto s0 = initial_state(b);
	CHECK(std::abs(transfer_amplitude(s0, b)) == 0.0);
	for(double t : {1.0, 10.0, 100.0}) {
		CHECK(std::abs(transfer_amplitude(evolve_continuous(sd, s0, t), b)) <= 1.0 + 1e-12);
	}
	// <1,6| exp(-iHt) |3,4> from the dense propagator
	const Matrix g = oracle::FullEvolver(oracle::full_hamiltonian(chain(6))).propagator(10.0);
	const auto from = oracle::full_index(b, b.index_of({3, 4}));
	const auto to = oracle::full_index(b, b.index_of({1, 6}));
	const cplx expected = g(to, from);
	CHECK(std::abs(transfer_amplitude(evolve_continuous(sd, s0, 10.0), b) - expected) < 1e-8);
}

TEST_CASE("kicks within a horizon")
{
	CHECK(KickSchedule::kicks_within(1000.0, 0.05) == 20000);
	CHECK(KickSchedule::kicks_within(1000.0, 0.3) == 3333);
	CHECK(KickSchedule::kicks_within(1.0, 0.1) == 10);
	CHECK(KickSchedule::kicks_within(0.01, 0.1) == 0);
}
