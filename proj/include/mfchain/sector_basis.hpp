// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace mfchain {

/// Two flipped (down) spins at 1-based sites j < jp.
struct FlipPair {
	int j = 0;
	int jp = 0;

	friend auto operator<=>(const FlipPair&, const FlipPair&) = default;
};

/// Which end-qubit state a flip pair reduces to after tracing out the bulk.
///   Type1: (1,N)           -> |11>
///   Type2: (1,jp<N)        -> |10>
///   Type3: (j>1,N)         -> |01>
///   Type4: neither end     -> |00>
enum class PairType { Type1, Type2, Type3, Type4 };

/// Index map for the span of the all-up vacuum and all two-flip states of
/// an open chain. Index 0 is the vacuum; pairs follow in lexicographic
/// (j, jp) order.
class SectorBasis {
public:
	static constexpr std::size_t kVacuum = 0;

	/// n_sites must be even and at least 4.
	explicit SectorBasis(int n_sites);

	[[nodiscard]] int n_sites() const { return n_sites_; }
	[[nodiscard]] std::size_t dimension() const { return pairs_.size() + 1; }
	[[nodiscard]] std::size_t pair_count() const { return pairs_.size(); }

	[[nodiscard]] std::size_t index_of(FlipPair p) const;
	/// std::nullopt stands for the vacuum.
	[[nodiscard]] std::optional<FlipPair> pair_of(std::size_t index) const;

	[[nodiscard]] PairType classify(FlipPair p) const;
	/// Counts of Type1..Type4 over every pair.
	[[nodiscard]] std::array<std::size_t, 4> type_counts() const;

	/// Pair carrying the injected Bell partner, (N/2, N/2+1).
	[[nodiscard]] FlipPair middle_pair() const { return {n_sites_ / 2, n_sites_ / 2 + 1}; }
	/// The receiver pair (1, N).
	[[nodiscard]] FlipPair end_pair() const { return {1, n_sites_}; }

	[[nodiscard]] bool is_valid(FlipPair p) const
	{
		return p.j >= 1 && p.j < p.jp && p.jp <= n_sites_;
	}

	[[nodiscard]] const std::vector<FlipPair>& pairs() const { return pairs_; }

private:
	void check(FlipPair p) const;

	int n_sites_;
	std::vector<FlipPair> pairs_;
};

} // namespace mfchain
