#pragma once

// Decision oracles for the separation properties, each returning a
// certificate on success or a counterexample on failure.
//
// Primal systems have the query sets as members over the ground V.
// Dual families have one member per element of V (its signature) over the
// ground of query-set indices. "Nice" is the dual form of k-hyperseparating.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sepsys/family.hpp"

namespace sepsys {

enum class Property { separating, completely_separating, hyper_completely, hyper_separating, nice };

std::string_view name(Property p) noexcept;

/// Evidence for one ground element (primal properties) or one member (nice).
struct Witness {
    std::size_t subject = 0;
    // Index set of primal members (as a bit set over member indices) or, for
    // nice, unused.
    Bits sets = 0;
    // Separator and key: dual coordinates for nice, translated to primal
    // member indices for hyper_separating.
    SeparatorWitness separator;
};

struct Certificate {
    Property property = Property::separating;
    int k = 0;
    std::vector<Witness> witnesses;
};

struct Verdict {
    bool holds = false;
    Certificate certificate;
    // On failure: the offending element(s) or member index, and a reason.
    std::vector<std::size_t> counterexample;
    std::string reason;

    explicit operator bool() const noexcept { return holds; }
};

Verdict is_separating(const Family& f);
Verdict is_completely_separating(const Family& f);
Verdict is_k_hypercompletely_separating(const Family& f, int k);
Verdict is_k_hyperseparating(const Family& f, int k);
Verdict is_nice(const Family& d, int k);

/// Smallest valid separator of member i by (size, numeric value), |S| <= k.
std::optional<SeparatorWitness> find_separator(const Family& d, std::size_t i, int k);

/// All valid separators of member i with |S| <= k, in (size, value) order.
std::vector<SeparatorWitness> all_separators(const Family& d, std::size_t i, int k);

struct PairFamilyVerdict {
    bool valid = false;
    std::string violation;
    // Indices into the pair list naming the offending pair(s).
    std::vector<std::size_t> offending;

    explicit operator bool() const noexcept { return valid; }
};

/// (separator, key) pairs with |separator| <= k on an m-element ground, pairwise
/// distinct, and for each key the separators carrying it form an antichain.
/// Throws Error(precondition) if some key is not inside its separator.
PairFamilyVerdict pair_family_valid(const std::vector<SeparatorWitness>& pairs, int m, int k);

// Independent re-checkers. These scan every member directly and do not share
// code with the oracles above, so a certificate can be audited on its own.

/// S has at most k elements and members[i] is the only member meeting S in `key`.
bool check_separator_witness(const Family& d, std::size_t i, const SeparatorWitness& w, int k);

/// The members of f indexed by `sets` (1..k of them) intersect exactly in {v}.
bool check_intersection_witness(const Family& f, std::size_t v, Bits sets, int k);

/// Re-validates every witness in a certificate against the family it came from.
bool check_certificate(const Family& f, const Certificate& c);

} // namespace sepsys
