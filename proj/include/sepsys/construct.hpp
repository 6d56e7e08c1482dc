#pragma once

// Explicit constructions and the two constructive proof devices: lifting the
// lowest layer of an antichain, and the case reductions that shrink a nice
// family (k = 2) by one ground element.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sepsys/family.hpp"

namespace sepsys::construct {

/// Member i = {j < n : bit i of j is 1}; ceil(log2 n) members. Ground n <= 64.
Family binary_separating(int n);

/// Completely separating system on n elements with spencer_min(n) members.
Family spencer_completely_separating(int n);

/// k-hypercompletely separating system on n elements with min_m_hcs(n, k) members.
Family k_hcs_minimal(int n, int k);

/// Nice (k = 2) dual families of size 2m on an m-element ground, m in 1..4,
/// members in ascending word order.
Family nice_small_m(int m);

/// Hand-found separator/key pairs for nice_small_m(4); entry i certifies member i.
std::vector<SeparatorWitness> nice_small_m4_listed_witnesses();

/// 2-hyperseparating system on n elements with f2_exact(n) members.
Family hyperseparating_minimal_2(int n);

/// n distinct j-subsets of {0..m-1} in lexicographic order, adjusted so every
/// index of the ground is used when n >= m / j permits it.
std::vector<Bits> covering_subsets(int m, int j, int n);

/// Replaces the smallest layer of a proper Sperner family with every set one
/// element larger that contains a member of that layer. Requires l + 1 < m - l
/// for the smallest size l; the result is Sperner and strictly larger.
Family antichain_lift(const Family& f);

enum class ReductionCase {
    shared_separator_keys_differ_by_one,
    shared_separator_keys_differ_by_two,
    singleton_separator,
    no_reduction,
};

std::string_view name(ReductionCase c) noexcept;

struct ReductionOutcome {
    ReductionCase which = ReductionCase::no_reduction;
    std::optional<Family> reduced;
    std::size_t removed_members = 0;

    // Ground elements involved, in input coordinates.
    int x = -1;
    int y = -1;
    // Members removed, in input coordinates.
    std::vector<std::size_t> removed;

    // Only meaningful for the differ-by-one case: x could be dropped from every
    // separator of every remaining member before x itself was deleted.
    bool x_redundant = true;
    // Candidate configurations tried whose output failed to re-verify as nice.
    std::size_t rejected_candidates = 0;
};

/// One step of the case analysis bounding nice families for k = 2.
/// Requires d nice for k = 2, proper, and ground_size >= 2.
ReductionOutcome proof_step_reduction(const Family& d);

struct ReductionChain {
    std::vector<ReductionOutcome> steps;
    // members removed along the chain plus the size of the irreducible remainder
    std::size_t certified_bound = 0;
    int final_ground = 0;
    std::size_t final_size = 0;
};

/// Applies proof_step_reduction until no case applies or the ground drops below 2.
ReductionChain reduce_to_exhaustion(const Family& d);

} // namespace sepsys::construct
