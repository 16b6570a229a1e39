// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/hamiltonian.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace mfchain {

namespace {

// Two-site coupling on sites a < b:
//   zz * Sz_a Sz_b + xy * (Sx_a Sx_b + Sy_a Sy_b) + chiral * (S_a x S_b)^z
struct BondTerm {
	int a;
	int b;
	double zz;
	double xy;
	double chiral;
};

struct Configuration {
	// 1-based flipped sites, empty for the vacuum
	int flips[2];
	int count;

	[[nodiscard]] bool down(int site) const
	{
		for(int k = 0; k < count; ++k) {
			if(flips[k] == site) {
				return true;
			}
		}
		return false;
	}
};

Configuration configuration_of(const SectorBasis& basis, std::size_t index)
{
	const auto p = basis.pair_of(index);
	if(!p) {
		return {{0, 0}, 0};
	}
	return {{p->j, p->jp}, 2};
}

// Index of the configuration with the flip at `from` moved to `to`.
std::size_t moved(const SectorBasis& basis, const Configuration& c, int from, int to)
{
	int other = c.flips[0] == from ? c.flips[1] : c.flips[0];
	return basis.index_of({std::min(other, to), std::max(other, to)});
}

Matrix assemble(const SectorBasis& basis, const std::vector<BondTerm>& terms)
{
	const auto dim = static_cast<Eigen::Index>(basis.dimension());
	Matrix h = Matrix::Zero(dim, dim);
	const cplx half_i{0.0, 0.5};
	for(Eigen::Index s = 0; s < dim; ++s) {
		const auto c = configuration_of(basis, static_cast<std::size_t>(s));
		for(const auto& t : terms) {
			const bool da = c.down(t.a);
			const bool db = c.down(t.b);
			h(s, s) += t.zz * (da == db ? 0.25 : -0.25);
			if(da == db) {
				continue;
			}
			// a down, b up: S_a^+ S_b^- moves the flip a -> b
			// a up, b down: S_a^- S_b^+ moves the flip b -> a
			const auto target = static_cast<Eigen::Index>(da ? moved(basis, c, t.a, t.b) : moved(basis, c, t.b, t.a));
			h(target, s) += 0.5 * t.xy;
			h(target, s) += (da ? half_i : -half_i) * t.chiral;
		}
	}
	return h;
}

void check_sizes(int spec_sites, const SectorBasis& basis)
{
	if(spec_sites != basis.n_sites()) {
		throw DomainError("model has N=" + std::to_string(spec_sites) + " but sector basis has N=" +
		                  std::to_string(basis.n_sites()));
	}
}

} // namespace

void BondProfile::scale(std::map<int, double>& m, int i, double factor)
{
	if(!(factor > 0.0)) {
		throw DomainError("bond factors must be strictly positive");
	}
	auto [it, inserted] = m.try_emplace(i, 1.0);
	it->second *= factor;
	if(it->second == 1.0) {
		m.erase(it);
	}
}

void BondProfile::scale_nn(int i, double factor) { scale(nn_scale_, i, factor); }

void BondProfile::scale_nnn(int i, double factor) { scale(nnn_scale_, i, factor); }

void ChainSpec::validate() const
{
	if(n_sites < 4 || n_sites % 2 != 0) {
		throw DomainError("chain length must be even and >= 4, got " + std::to_string(n_sites));
	}
	for(const auto& [i, f] : bonds.nn_scale()) {
		if(i < 1 || i > n_sites - 1) {
			throw DomainError("NN bond (" + std::to_string(i) + "," + std::to_string(i + 1) + ") outside chain");
		}
	}
	for(const auto& [i, f] : bonds.nnn_scale()) {
		if(i < 1 || i > n_sites - 2) {
			throw DomainError("NNN bond (" + std::to_string(i) + "," + std::to_string(i + 2) + ") outside chain");
		}
	}
}

BondProfile impurity_profile(const ImpuritySpec& spec, int n_sites)
{
	const int k = spec.site;
	if(k < 2 || k > n_sites - 2) {
		throw DomainError("impurity site " + std::to_string(k) + " needs 2 <= k <= N-2 (N=" +
		                  std::to_string(n_sites) + ")");
	}
	if(!(spec.strength > 0.0)) {
		throw DomainError("impurity strength must be positive");
	}
	const double kappa = spec.strength;
	BondProfile p;
	if(kappa == 1.0) {
		return p;
	}
	switch(spec.kind) {
	case ImpurityKind::TypeI:
		p.scale_nn(k, kappa);
		p.scale_nnn(k - 1, kappa);
		p.scale_nnn(k, 1.0 / kappa);
		break;
	case ImpurityKind::TypeII:
		p.scale_nn(k, 1.0 / kappa);
		p.scale_nnn(k - 1, kappa);
		p.scale_nnn(k, 1.0 / kappa);
		break;
	}
	return p;
}

BondProfile impurity_profile(std::span<const ImpuritySpec> specs, int n_sites)
{
	BondProfile total;
	for(const auto& s : specs) {
		const auto p = impurity_profile(s, n_sites);
		for(const auto& [i, f] : p.nn_scale()) {
			total.scale_nn(i, f);
		}
		for(const auto& [i, f] : p.nnn_scale()) {
			total.scale_nnn(i, f);
		}
	}
	return total;
}

double vacuum_energy(const ChainSpec& spec)
{
	spec.validate();
	double e = 0.0;
	for(int i = 1; i <= spec.n_sites - 1; ++i) {
		e -= 0.25 * spec.j1 * spec.bonds.nn(i);
	}
	for(int i = 1; i <= spec.n_sites - 2; ++i) {
		e -= 0.25 * spec.j2 * spec.bonds.nnn(i);
	}
	return e;
}

Matrix build_h0_sector(const ChainSpec& spec, const SectorBasis& basis)
{
	spec.validate();
	check_sizes(spec.n_sites, basis);
	std::vector<BondTerm> terms;
	for(int i = 1; i <= spec.n_sites - 1; ++i) {
		const double j = -spec.j1 * spec.bonds.nn(i);
		terms.push_back({i, i + 1, j, j, spec.e0});
	}
	for(int i = 1; i <= spec.n_sites - 2; ++i) {
		const double j = -spec.j2 * spec.bonds.nnn(i);
		terms.push_back({i, i + 2, j, j, 0.0});
	}
	return assemble(basis, terms);
}

Matrix build_chirality_sector(const ChainSpec& spec, const SectorBasis& basis)
{
	spec.validate();
	check_sizes(spec.n_sites, basis);
	std::vector<BondTerm> terms;
	for(int i = 1; i <= spec.n_sites - 1; ++i) {
		terms.push_back({i, i + 1, 0.0, 0.0, 1.0});
	}
	return assemble(basis, terms);
}

Matrix build_xxz_sector(const XXZSpec& spec, const SectorBasis& basis)
{
	check_sizes(spec.n_sites, basis);
	std::vector<BondTerm> terms;
	for(int i = 1; i <= spec.n_sites - 1; ++i) {
		terms.push_back({i, i + 1, spec.jz, spec.jx, 0.0});
	}
	return assemble(basis, terms);
}

} // namespace mfchain
