// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "mfchain/sweep.hpp"

using namespace mfchain;
using doctest::Approx;

namespace {

MultiferroicModel model(int n)
{
	MultiferroicModel m;
	m.chain.n_sites = n;
	return m;
}

SweepGrid small_grid()
{
	SweepGrid g;
	g.t_max = 60.0;
	g.dt_unkicked = 0.05;
	g.tau_values = {0.35, 0.1, 0.6};
	g.e1_values = {2.0, 0.5};
	return g;
}

struct Best {
	double f = 0.0;
	long r = 0;
};

// Step-by-step maximum over r = 1..kicks, first occurrence wins.
Best brute_force(const ChainSpec& c, double tau, double e1, long kicks, const std::optional<EnvironmentSpec>& env)
{
	const SectorBasis b(c.n_sites);
	const SpectralDecomposition sd(build_h0_sector(c, b));
	const Matrix u1 = kick_operator(build_chirality_sector(c, b), e1);
	Best best;
	for_each_kick(sd.propagator(tau), u1, initial_state(b), kicks, [&](long r, const SectorState& s) {
		const double t = static_cast<double>(r) * tau;
		const double f = env ? singlet_fraction_env(s, sd.vacuum_energy(), t, b, *env).f
		                     : singlet_fraction(s, sd.vacuum_energy(), t, b).f;
		if(f > best.f) {
			best = {f, r};
		}
	});
	return best;
}

void check_nesting(const SweepResult& r)
{
	for(const auto& p : r.surface) {
		CHECK(r.f_maxxx >= p.f_max);
	}
	for(const auto& e : r.per_e1) {
		CHECK(r.f_maxxx >= e.f_maxx);
	}
	CHECK(r.f_maxxx >= r.f_maxx);
	CHECK(r.f_maxx >= r.f_max);
}

} // namespace

TEST_CASE("grid defaults")
{
	const auto g = SweepGrid::defaults();
	CHECK(g.t_max == 1000.0);
	CHECK(g.dt_unkicked == 0.05);
	REQUIRE(g.tau_values.size() == 40);
	REQUIRE(g.e1_values.size() == 100);
	CHECK(g.tau_values.front() == Approx(0.05));
	CHECK(g.tau_values.back() == Approx(2.0));
	CHECK(g.e1_values.back() == Approx(5.0));
	CHECK_NOTHROW(g.validate());

	auto bad = g;
	bad.e1_values.push_back(5.5);
	CHECK_THROWS_AS(bad.validate(), DomainError);
	bad = g;
	bad.tau_values.push_back(0.0);
	CHECK_THROWS_AS(bad.validate(), DomainError);
	bad = g;
	bad.t_max = 0.0;
	CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("unkicked maximum")
{
	CHECK(fmax_unkicked(model(8), std::nullopt, 0.01, 0.05).f_max == 0.5);
	const auto r = fmax_unkicked(model(8), std::nullopt, 200.0, 0.05);
	CHECK(r.f_max > 0.5);
	CHECK(r.f_max <= 1.0);

	const SectorBasis b(8);
	const SpectralDecomposition sd(build_h0_sector(model(8).chain, b));
	double best = 0.0;
	for(long k = 0; k <= 4000; ++k) {
		const double t = static_cast<double>(k) * 0.05;
		best = std::max(best, singlet_fraction(evolve_continuous(sd, initial_state(b), t), sd.vacuum_energy(), t, b).f);
	}
	CHECK(r.f_max == Approx(best).epsilon(1e-12));
}

TEST_CASE("E1 = 0 reproduces the unkicked maximum on the tau lattice")
{
	SweepGrid s;
	s.t_max = 100.0;
	const auto kicked = fmax_kicked(model(8), std::nullopt, {0.1, 0.0, 0}, s);
	const auto plain = fmax_unkicked(model(8), std::nullopt, 100.0, 0.1);
	CHECK(kicked.f_max == Approx(plain.f_max).epsilon(1e-10));
}

TEST_CASE("grid surface matches step-by-step evolution")
{
	const auto grid = small_grid();
	const auto r = fmaxxx(model(8), std::nullopt, grid, 2);
	REQUIRE(r.surface.size() == 6);
	for(const auto& p : r.surface) {
		const auto ref = brute_force(model(8).chain, p.tau, p.e1, KickSchedule::kicks_within(grid.t_max, p.tau), {});
		CHECK(p.f_max == Approx(ref.f).epsilon(1e-10));
		CHECK(p.kicks == ref.r);
	}
	CHECK(r.surface[0].e1 == 0.5);
	CHECK(r.surface[0].tau == 0.1);
	CHECK(r.surface[5].e1 == 2.0);
	CHECK(r.surface[5].tau == 0.6);
	check_nesting(r);
	const auto best = std::max_element(r.surface.begin(), r.surface.end(),
	                                   [](const GridPoint& a, const GridPoint& b) { return a.f_max < b.f_max; });
	CHECK(r.f_maxxx == best->f_max);
	CHECK(r.argmax.tau == best->tau);
	CHECK(r.argmax.e1 == best->e1);
	CHECK(r.argmax.time == Approx(best->tau * static_cast<double>(best->kicks)));
	CHECK(r.delta_vs_unkicked == Approx(r.f_maxxx - r.unkicked_f_max));
}

TEST_CASE("bath-coupled sweeps match step-by-step evolution")
{
	const auto grid = small_grid();
	const std::vector<std::optional<EnvironmentSpec>> envs{std::nullopt, EnvironmentSpec{20, 0.1},
	                                                       EnvironmentSpec{20, 1.0}};
	const auto res = fmaxxx_envs(model(6), envs, grid, 1);
	REQUIRE(res.size() == 3);
	for(std::size_t k = 0; k < envs.size(); ++k) {
		for(const auto& p : res[k].surface) {
			const auto ref =
			    brute_force(model(6).chain, p.tau, p.e1, KickSchedule::kicks_within(grid.t_max, p.tau), envs[k]);
			CHECK(p.f_max == Approx(ref.f).epsilon(1e-10));
		}
		const auto single = fmaxxx(model(6), envs[k], grid, 1);
		CHECK(single.f_maxxx == res[k].f_maxxx);
		CHECK(single.unkicked_f_max == res[k].unkicked_f_max);
	}
}

TEST_CASE("thread count and grid order do not change results")
{
	auto grid = small_grid();
	const auto one = fmaxxx(model(8), std::nullopt, grid, 1);
	std::reverse(grid.tau_values.begin(), grid.tau_values.end());
	std::reverse(grid.e1_values.begin(), grid.e1_values.end());
	const auto many = fmaxxx(model(8), std::nullopt, grid, 5);
	CHECK(one.f_maxxx == many.f_maxxx);
	CHECK(one.argmax.tau == many.argmax.tau);
	CHECK(one.argmax.e1 == many.argmax.e1);
	CHECK(one.argmax.kicks == many.argmax.kicks);
	REQUIRE(one.surface.size() == many.surface.size());
	for(std::size_t i = 0; i < one.surface.size(); ++i) {
		CHECK(one.surface[i].f_max == many.surface[i].f_max);
		CHECK(one.surface[i].kicks == many.surface[i].kicks);
	}
}

TEST_CASE("one-point E1 grid collapses the hierarchy")
{
	auto grid = small_grid();
	grid.e1_values = {1.5};
	const auto r = fmaxxx(model(8), std::nullopt, grid, 1);
	const auto x = fmaxx(model(8), std::nullopt, 1.5, grid, 1);
	CHECK(r.f_maxxx == r.f_maxx);
	CHECK(r.f_maxxx == x.f_maxx);
}

TEST_CASE("fixed kick count")
{
	SweepGrid s;
	s.t_max = 50.0;
	const auto r = fmax_kicked(model(8), std::nullopt, {0.2, 1.0, 40}, s);
	const auto ref = brute_force(model(8).chain, 0.2, 1.0, 40, {});
	CHECK(r.f_max == Approx(ref.f).epsilon(1e-10));
	CHECK(r.argmax.kicks <= 40);
	CHECK_THROWS_AS(fmax_kicked(model(8), std::nullopt, {0.2, 1.0, 251}, s), DomainError);
}

TEST_CASE("XXZ chains are not kickable")
{
	CHECK_THROWS_AS(fmaxxx(XXZSpec{8, 1.0, 0.5}, std::nullopt, small_grid(), 1), DomainError);
	CHECK(fmax_unkicked(XXZSpec{8, 1.0, 0.5}, std::nullopt, 50.0, 0.05).f_max > 0.5);
}

TEST_CASE("kappa = 1 impurity rows equal the clean chain")
{
	const auto grid = small_grid();
	const std::vector<double> kappas{1.0, 1.4};
	const std::vector<int> sites{2, 6};
	const auto clean = fmaxxx(model(8), std::nullopt, grid, 1);
	for(auto kind : {ImpurityKind::TypeI, ImpurityKind::TypeII}) {
		const auto rows = impurity_sweep(model(8).chain, kind, kappas, sites, grid, 1);
		REQUIRE(rows.size() == 2);
		CHECK(rows[0].kicked.f_maxxx == clean.f_maxxx);
		CHECK(rows[0].unkicked_f_max == clean.unkicked_f_max);
		CHECK(rows[1].kicked.f_maxxx != clean.f_maxxx);
	}
	const std::vector<double> weak{0.9};
	CHECK_THROWS_AS(impurity_sweep(model(8).chain, ImpurityKind::TypeI, weak, sites, grid, 1), DomainError);
}

TEST_CASE("a small kick already lifts the N=10 optimum")
{
	auto grid = SweepGrid::defaults();
	const double kicked = fmaxx(model(10), std::nullopt, 0.05, grid, 2).f_maxx;
	const double vanishing = fmaxx(model(10), std::nullopt, 1e-9, grid, 2).f_maxx;
	CHECK(kicked > vanishing);
}
