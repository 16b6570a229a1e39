// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mfchain {

EndpointWeights endpoint_weights(const SectorState& state, const SectorBasis& basis)
{
	const auto dim = static_cast<Eigen::Index>(basis.dimension());
	if(state.amplitudes.size() != dim) {
		throw DomainError("state dimension does not match the sector basis");
	}
	const double norm = state.norm();
	if(!(std::abs(norm - 1.0) <= 1e-6)) {
		throw IntegrityError("state norm drifted to " + std::to_string(norm));
	}
	EndpointWeights w;
	const auto& pairs = basis.pairs();
	for(std::size_t k = 0; k < pairs.size(); ++k) {
		const cplx a = std::sqrt(2.0) * state.amplitudes(static_cast<Eigen::Index>(k + 1));
		w.type_weight[static_cast<std::size_t>(basis.classify(pairs[k]))] += std::norm(a);
	}
	w.end_amplitude = transfer_amplitude(state, basis);
	const int n = basis.n_sites();
	for(int j = 2; j < n; ++j) {
		const auto left = static_cast<Eigen::Index>(basis.index_of({1, j}));
		const auto right = static_cast<Eigen::Index>(basis.index_of({j, n}));
		w.side_coherence += 2.0 * state.amplitudes(right) * std::conj(state.amplitudes(left));
	}
	return w;
}

namespace {

SingletResult make_result(const EndpointWeights& w, double vacuum_energy, double t, cplx r)
{
	SingletResult res;
	res.time = t;
	res.transfer_prob = std::norm(w.end_amplitude);
	res.type4_weight = w.type_weight[3];
	res.env_factor = r;
	res.f = singlet_from_weights(res.type4_weight, w.end_amplitude, vacuum_energy, t, r);
	res.fidelity = fidelity_from_singlet(res.f);
	return res;
}

} // namespace

SingletResult singlet_fraction(const SectorState& state, double vacuum_energy, double t, const SectorBasis& basis)
{
	return make_result(endpoint_weights(state, basis), vacuum_energy, t, {1.0, 0.0});
}

cplx env_phase_factor(const EnvironmentSpec& env, double t)
{
	return std::polar(1.0, env.p_sites * env.g * t);
}

cplx env_phase_factor(std::span<const double> couplings, std::span<const double> populations, double t)
{
	const std::size_t p = couplings.size();
	if(p > 30 || populations.size() != (std::size_t{1} << p)) {
		throw DomainError("bath populations must have 2^P entries (P <= 30)");
	}
	cplx r{0.0, 0.0};
	for(std::size_t m = 0; m < populations.size(); ++m) {
		if(populations[m] == 0.0) {
			continue;
		}
		double b = 0.0;
		for(std::size_t k = 0; k < p; ++k) {
			const bool down = (m >> (p - 1 - k)) & 1u;
			b += 0.5 * (down ? -couplings[k] : couplings[k]);
		}
		r += populations[m] * std::polar(1.0, 2.0 * t * b);
	}
	return r;
}

SingletResult singlet_fraction_env(const SectorState& state, double vacuum_energy, double t, const SectorBasis& basis,
                                   const EnvironmentSpec& env)
{
	return make_result(endpoint_weights(state, basis), vacuum_energy, t, env_phase_factor(env, t));
}

Eigen::Matrix4cd rho_out(const SectorState& state, double vacuum_energy, double t, const SectorBasis& basis,
                         const std::optional<EnvironmentSpec>& env)
{
	const auto w = endpoint_weights(state, basis);
	const cplx r = env ? env_phase_factor(*env, t) : cplx{1.0, 0.0};
	Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
	rho(0, 0) = 0.5 + 0.5 * w.type_weight[3];
	rho(1, 1) = 0.5 * w.type_weight[2];
	rho(2, 2) = 0.5 * w.type_weight[1];
	rho(3, 3) = 0.5 * w.type_weight[0];
	rho(3, 0) = 0.5 * std::polar(1.0, vacuum_energy * t) * w.end_amplitude * r;
	rho(0, 3) = std::conj(rho(3, 0));
	rho(1, 2) = 0.5 * w.side_coherence;
	rho(2, 1) = std::conj(rho(1, 2));
	return rho;
}

namespace {

double overlap(const Eigen::Matrix4cd& rho, const Eigen::Vector4cd& v) { return (v.adjoint() * rho * v)(0).real(); }

} // namespace

double bell_overlap(const Eigen::Matrix4cd& rho)
{
	const double s = 1.0 / std::sqrt(2.0);
	return overlap(rho, Eigen::Vector4cd(s, 0.0, 0.0, s));
}

double max_bell_fraction(const Eigen::Matrix4cd& rho)
{
	const double s = 1.0 / std::sqrt(2.0);
	return std::max({overlap(rho, Eigen::Vector4cd(s, 0.0, 0.0, s)), overlap(rho, Eigen::Vector4cd(s, 0.0, 0.0, -s)),
	                 overlap(rho, Eigen::Vector4cd(0.0, s, s, 0.0)), overlap(rho, Eigen::Vector4cd(0.0, s, -s, 0.0))});
}

} // namespace mfchain
