#pragma once

// Exhaustive branch-and-bound searches over families of distinct subsets of a
// small ground.
//
// Both hereditary properties searched here have the same shape: every member
// owns a "cell" that no other member occupies.
//   nice(k):           cells are (S, F & S) for |S| <= k
//   unique subset(k):  cells are the subsets S of F with |S| <= k
// A family is valid iff every member has a private cell, so adding a member
// can only invalidate others and the feasible extensions of a node shrink
// monotonically down the tree.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "sepsys/family.hpp"

namespace sepsys::search {

struct SearchOptions {
    bool symmetry = true;
    int threads = 1;
    std::optional<std::chrono::milliseconds> budget;
};

struct SearchReport {
    int best = 0;
    Family example;
    bool exhausted = false;
    std::uint64_t nodes_visited = 0;
    std::optional<std::chrono::milliseconds> wall_budget;
    // Only for max_pair_family.
    std::vector<SeparatorWitness> example_pairs;
    // Only for min_m_hyperseparating: exhausted flag of each level m = 0..m_max
    // that was examined.
    std::vector<bool> level_exhausted;
    bool found = true;
};

inline constexpr int kMaxNiceGround = 6;
inline constexpr int kMaxUniqueSubsetGround = 5;

/// g(m, k): largest nice-for-k family of distinct subsets of an m-ground.
SearchReport max_nice_size(int m, int k, const SearchOptions& opts = {});

enum class Existence { found, absent, unknown };

struct ExistsResult {
    Existence status = Existence::unknown;
    std::optional<Family> family;
    std::uint64_t nodes_visited = 0;
};

/// Decision form: is there a nice-for-k family of `target` distinct subsets?
ExistsResult exists_nice_of_size(int m, int k, int target, const SearchOptions& opts = {});

/// f(n, k) by search: smallest m <= m_max admitting a nice family of n
/// subsets. The example is the primal system (n elements, best members).
SearchReport min_m_hyperseparating(int n, int k, int m_max, const SearchOptions& opts = {});

/// Largest family of distinct subsets where each member owns a subset of size
/// <= k contained in no other member.
SearchReport max_unique_subset_family(int m, int k, const SearchOptions& opts = {});

/// Largest set of (separator, key) pairs with |separator| <= k, key inside
/// separator, and the separators sharing a key forming an antichain.
SearchReport max_pair_family(int m, int k);

} // namespace sepsys::search
