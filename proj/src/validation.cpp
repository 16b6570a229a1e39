// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "mfchain/hamiltonian.hpp"
#include "mfchain/oracle.hpp"
#include "mfchain/propagator.hpp"

namespace mfchain::oracle {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double sample_time(const CheckParams& p, int k)
{
	return p.samples > 1 ? p.t_end * k / (p.samples - 1) : 0.0;
}

// Largest |f_sector - f_full| over the sampled times of unkicked evolution.
double unkicked_gap(const ChainSpec& chain, const CheckParams& p)
{
	const SectorBasis basis(chain.n_sites);
	const SpectralDecomposition sd(build_h0_sector(chain, basis));
	const FullEvolver full(full_hamiltonian(chain));
	const auto s0 = mfchain::initial_state(basis);
	const auto f0 = initial_state(chain.n_sites);
	double gap = 0.0;
	for(int k = 0; k < p.samples; ++k) {
		const double t = sample_time(p, k);
		const double fs = singlet_fraction(evolve_continuous(sd, s0, t), sd.vacuum_energy(), t, basis).f;
		const double ff = singlet_fraction(full.evolve(f0, t));
		gap = std::max(gap, std::abs(fs - ff));
	}
	return gap;
}

// Kicks r = 1 .. samples*stride where stride*tau covers t_end.
long kick_stride(const CheckParams& p)
{
	return std::max(1L, std::lround(p.t_end / (p.tau * p.samples)));
}

} // namespace

std::vector<Check> run_checks(const CheckParams& p)
{
	std::vector<Check> checks;
	const double sector_e1 = p.corrupt_kick_sign ? -p.e1 : p.e1;

	for(int n : p.sizes) {
		const std::string tag = "N=" + std::to_string(n) + " ";
		ChainSpec chain;
		chain.n_sites = n;
		chain.j1 = p.j1;
		chain.j2 = p.j2;
		chain.e0 = p.e0;
		const SectorBasis basis(n);

		const Matrix h_full = full_hamiltonian(chain);
		const Matrix d_full = full_chirality(n);
		const XXZSpec xxz{n, 1.0, 0.5};
		const Matrix h_sector = build_h0_sector(chain, basis);
		const Matrix d_sector = build_chirality_sector(chain, basis);

		checks.push_back({tag + "H0 projection", max_abs(project_to_sector(h_full, basis) - h_sector), 1e-12});
		checks.push_back({tag + "chirality projection", max_abs(project_to_sector(d_full, basis) - d_sector), 1e-12});
		checks.push_back({tag + "XXZ projection",
		                  max_abs(project_to_sector(full_hamiltonian(xxz), basis) - build_xxz_sector(xxz, basis)), 1e-12});

		const Matrix m = full_magnetization(n);
		checks.push_back({tag + "[M,H0]", max_abs(m * h_full - h_full * m), 1e-12});

		double leak = 0.0;
		double round_trip = 0.0;
		for(std::size_t k = 0; k < basis.dimension(); ++k) {
			Vector e = Vector::Zero(static_cast<Eigen::Index>(basis.dimension()));
			e(static_cast<Eigen::Index>(k)) = 1.0;
			const auto full = embed(basis, e);
			round_trip = std::max(round_trip, max_abs(project_state(basis, full) - e));
			for(const Matrix* op : {&h_full, &d_full}) {
				const FullState image{*op * full.amplitudes, n, 0};
				const double inside = project_state(basis, image).squaredNorm();
				leak = std::max(leak, std::abs(image.amplitudes.squaredNorm() - inside));
			}
		}
		checks.push_back({tag + "sector closure", leak, 1e-12});
		checks.push_back({tag + "embed/project round trip", round_trip, 0.0});

		checks.push_back({tag + "clean f(t)", unkicked_gap(chain, p), 1e-8});

		// rho_out entrywise and its physical properties along the clean run
		{
			const SpectralDecomposition sd(h_sector);
			const FullEvolver full(h_full);
			const auto s0 = mfchain::initial_state(basis);
			const auto f0 = initial_state(n);
			double entry_gap = 0.0;
			double trace_gap = 0.0;
			double min_eig = std::numeric_limits<double>::infinity();
			double herm = 0.0;
			for(int k = 0; k < p.samples; ++k) {
				const double t = sample_time(p, k);
				const auto rs = mfchain::rho_out(evolve_continuous(sd, s0, t), sd.vacuum_energy(), t, basis);
				const auto rf = rho_out(full.evolve(f0, t));
				entry_gap = std::max(entry_gap, (rs - rf).cwiseAbs().maxCoeff());
				trace_gap = std::max(trace_gap, std::abs(rs.trace() - 1.0));
				herm = std::max(herm, (rs - rs.adjoint()).cwiseAbs().maxCoeff());
				const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rs);
				min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
			}
			checks.push_back({tag + "rho_out entrywise", entry_gap, 1e-8});
			checks.push_back({tag + "rho_out trace", trace_gap, 1e-12});
			checks.push_back({tag + "rho_out hermiticity", herm, 1e-14});
			checks.push_back({tag + "rho_out min eigenvalue", std::max(0.0, -min_eig), 1e-10});
		}

		// kicked
		{
			const Matrix u0s = SpectralDecomposition(h_sector).propagator(p.tau);
			const Matrix u1s = kick_operator(d_sector, sector_e1);
			const Matrix u0f = FullEvolver(h_full).propagator(p.tau);
			const Matrix u1f = hermitian_exponential(d_full, p.e1);
			const double e_vac = h_sector(0, 0).real();
			const long stride = kick_stride(p);
			SectorState s = mfchain::initial_state(basis);
			FullState f = initial_state(n);
			double gap = 0.0;
			for(int k = 1; k <= p.samples; ++k) {
				s = evolve_kicked(u0s, u1s, s, stride);
				f = full_kicked(u0f, u1f, f, stride);
				const double t = static_cast<double>(k * stride) * p.tau;
				gap = std::max(gap, std::abs(singlet_fraction(s, e_vac, t, basis).f - singlet_fraction(f)));
			}
			checks.push_back({tag + "kicked f(t)", gap, 1e-8});
		}

		// two TypeI impurities at the outermost allowed sites
		{
			ChainSpec impure = chain;
			std::vector<ImpuritySpec> specs{{2, ImpurityKind::TypeI, p.kappa}};
			if(n - 2 != 2) {
				specs.push_back({n - 2, ImpurityKind::TypeI, p.kappa});
			}
			impure.bonds = impurity_profile(specs, n);
			checks.push_back({tag + "TypeI impurity f(t)", unkicked_gap(impure, p), 1e-8});
		}
	}

	// bath-coupled chain
	{
		const int n = p.env_system_sites;
		const std::string tag = "N=" + std::to_string(n) + ",P=" + std::to_string(p.env.p_sites) + " ";
		ChainSpec chain;
		chain.n_sites = n;
		chain.j1 = p.j1;
		chain.j2 = p.j2;
		chain.e0 = p.e0;
		const SectorBasis basis(n);
		const Matrix h_sector = build_h0_sector(chain, basis);
		const SpectralDecomposition sd(h_sector);
		const Matrix h_total = full_hamiltonian(chain, p.env);
		const FullEvolver full(h_total);
		const auto s0 = mfchain::initial_state(basis);
		const auto f0 = initial_state(n, p.env.p_sites);

		double gap = 0.0;
		double rho_gap = 0.0;
		double reduction = 0.0;
		double closed_form = 0.0;
		const std::vector<double> couplings(static_cast<std::size_t>(p.env.p_sites), p.env.g);
		std::vector<double> all_up(std::size_t{1} << p.env.p_sites, 0.0);
		all_up[0] = 1.0;
		for(int k = 0; k < p.samples; ++k) {
			const double t = sample_time(p, k);
			const auto st = evolve_continuous(sd, s0, t);
			const auto ft = full.evolve(f0, t);
			gap = std::max(gap, std::abs(singlet_fraction_env(st, sd.vacuum_energy(), t, basis, p.env).f -
			                             singlet_fraction(ft)));
			rho_gap = std::max(rho_gap, (mfchain::rho_out(st, sd.vacuum_energy(), t, basis, p.env) - rho_out(ft))
			                                .cwiseAbs()
			                                .maxCoeff());
			const EnvironmentSpec inert{p.env.p_sites, 0.0};
			reduction = std::max(reduction, std::abs(singlet_fraction_env(st, sd.vacuum_energy(), t, basis, inert).f -
			                                         singlet_fraction(st, sd.vacuum_energy(), t, basis).f));
			closed_form = std::max(closed_form, std::abs(env_phase_factor(p.env, t) -
			                                             env_phase_factor(couplings, all_up, t)));
		}
		checks.push_back({tag + "bath f(t)", gap, 1e-8});
		checks.push_back({tag + "bath rho_out entrywise", rho_gap, 1e-8});
		checks.push_back({tag + "g=0 reduces to bare chain", reduction, 0.0});
		checks.push_back({tag + "r(t) closed form", closed_form, 1e-12});

		// kicked with bath
		const Matrix u0s = sd.propagator(p.tau);
		const Matrix u1s = kick_operator(build_chirality_sector(chain, basis), sector_e1);
		const Matrix u0f = full.propagator(p.tau);
		const Matrix u1f = hermitian_exponential(full_chirality(n, p.env.p_sites), p.e1);
		const long stride = kick_stride(p);
		SectorState s = s0;
		FullState f = f0;
		double kgap = 0.0;
		for(int k = 1; k <= p.samples; ++k) {
			s = evolve_kicked(u0s, u1s, s, stride);
			f = full_kicked(u0f, u1f, f, stride);
			const double t = static_cast<double>(k * stride) * p.tau;
			kgap = std::max(kgap, std::abs(singlet_fraction_env(s, sd.vacuum_energy(), t, basis, p.env).f -
			                               singlet_fraction(f)));
		}
		checks.push_back({tag + "kicked bath f(t)", kgap, 1e-8});
	}
	return checks;
}

} // namespace mfchain::oracle
