// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/sector_basis.hpp"

#include <string>

#include "mfchain/types.hpp"

namespace mfchain {

SectorBasis::SectorBasis(int n_sites) : n_sites_{n_sites}
{
	if(n_sites < 4 || n_sites % 2 != 0) {
		throw DomainError("chain length must be even and >= 4, got " + std::to_string(n_sites));
	}
	pairs_.reserve(static_cast<std::size_t>(n_sites) * (n_sites - 1) / 2);
	for(int j = 1; j <= n_sites; ++j) {
		for(int jp = j + 1; jp <= n_sites; ++jp) {
			pairs_.push_back({j, jp});
		}
	}
}

void SectorBasis::check(FlipPair p) const
{
	if(!is_valid(p)) {
		throw DomainError("flip pair (" + std::to_string(p.j) + "," + std::to_string(p.jp) +
		                  ") invalid for N=" + std::to_string(n_sites_));
	}
}

std::size_t SectorBasis::index_of(FlipPair p) const
{
	check(p);
	// pairs starting before j: sum_{a=1}^{j-1} (N - a)
	const auto n = static_cast<std::size_t>(n_sites_);
	const auto jm = static_cast<std::size_t>(p.j - 1);
	const std::size_t offset = jm * n - jm * (jm + 1) / 2;
	return 1 + offset + static_cast<std::size_t>(p.jp - p.j - 1);
}

std::optional<FlipPair> SectorBasis::pair_of(std::size_t index) const
{
	if(index >= dimension()) {
		throw DomainError("sector index " + std::to_string(index) + " out of range [0, " +
		                  std::to_string(dimension() - 1) + "]");
	}
	if(index == kVacuum) {
		return std::nullopt;
	}
	return pairs_[index - 1];
}

PairType SectorBasis::classify(FlipPair p) const
{
	check(p);
	const bool left = p.j == 1;
	const bool right = p.jp == n_sites_;
	if(left && right) {
		return PairType::Type1;
	}
	if(left) {
		return PairType::Type2;
	}
	if(right) {
		return PairType::Type3;
	}
	return PairType::Type4;
}

std::array<std::size_t, 4> SectorBasis::type_counts() const
{
	std::array<std::size_t, 4> counts{};
	for(const auto& p : pairs_) {
		++counts[static_cast<std::size_t>(classify(p))];
	}
	return counts;
}

} // namespace mfchain
