// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>

#include "mfchain/sector_basis.hpp"
#include "mfchain/types.hpp"

namespace mfchain {

/// Multiplicative factors on individual exchange bonds. NN bonds are keyed by
/// their left site i for (i, i+1); NNN bonds by i for (i, i+2). Missing keys
/// mean a factor of 1.
class BondProfile {
public:
	[[nodiscard]] double nn(int i) const { return lookup(nn_scale_, i); }
	[[nodiscard]] double nnn(int i) const { return lookup(nnn_scale_, i); }

	/// Multiplies the factor already stored for the bond.
	void scale_nn(int i, double factor);
	void scale_nnn(int i, double factor);

	[[nodiscard]] const std::map<int, double>& nn_scale() const { return nn_scale_; }
	[[nodiscard]] const std::map<int, double>& nnn_scale() const { return nnn_scale_; }

	[[nodiscard]] bool is_identity() const { return nn_scale_.empty() && nnn_scale_.empty(); }

	friend bool operator==(const BondProfile&, const BondProfile&) = default;

private:
	static double lookup(const std::map<int, double>& m, int i)
	{
		const auto it = m.find(i);
		return it == m.end() ? 1.0 : it->second;
	}
	static void scale(std::map<int, double>& m, int i, double factor);

	std::map<int, double> nn_scale_;
	std::map<int, double> nnn_scale_;
};

/// J1-J2 helical chain with field-polarization coupling E0, open boundary.
/// Energies in units of J1, hbar = 1.
struct ChainSpec {
	int n_sites = 16;
	double j1 = 1.0;
	double j2 = -1.0;
	double e0 = 0.01;
	BondProfile bonds;

	/// Throws DomainError for odd/short chains or bond factors that reach
	/// outside the chain.
	void validate() const;
};

enum class ImpurityKind { TypeI, TypeII };

struct ImpuritySpec {
	int site = 4;
	ImpurityKind kind = ImpurityKind::TypeI;
	/// kappa = J22 / J2.
	double strength = 1.0;
};

/// Nearest-neighbour XXZ chain, open boundary. jz = 0 is the XX model.
struct XXZSpec {
	int n_sites = 10;
	double jx = 1.0;
	double jz = 0.0;
};

/// Bond factors produced by one impurity at site k:
///   TypeI:  NN(k,k+1) * kappa,   NNN(k-1,k+1) * kappa, NNN(k,k+2) / kappa
///   TypeII: NN(k,k+1) / kappa,   NNN(k-1,k+1) * kappa, NNN(k,k+2) / kappa
/// kappa == 1 leaves the profile empty.
BondProfile impurity_profile(const ImpuritySpec& spec, int n_sites);

/// Composes several impurities multiplicatively.
BondProfile impurity_profile(std::span<const ImpuritySpec> specs, int n_sites);

/// Energy of the all-up state, -sum_b J_b / 4 over every exchange bond.
double vacuum_energy(const ChainSpec& spec);

/// H0 = -sum J1 S_i.S_{i+1} - sum J2 S_i.S_{i+2} + E0 D restricted to the
/// sector, bond factors applied to the exchange terms only.
Matrix build_h0_sector(const ChainSpec& spec, const SectorBasis& basis);

/// D = sum_i (S_i x S_{i+1})^z = sum_i (i/2)(S_i^+ S_{i+1}^- - S_i^- S_{i+1}^+).
/// Impurities do not touch the magnetoelectric term.
Matrix build_chirality_sector(const ChainSpec& spec, const SectorBasis& basis);

/// H = jx sum (SxSx + SySy) + jz sum SzSz over NN bonds.
Matrix build_xxz_sector(const XXZSpec& spec, const SectorBasis& basis);

} // namespace mfchain
