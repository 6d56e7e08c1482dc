#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepsys {

/// One member of a family: bit i set iff ground element i belongs to it.
using Bits = std::uint64_t;

inline constexpr int kMaxGround = 64;

enum class ErrorKind {
    construction,   // malformed member / index
    capacity,       // more than 64 ground elements (or search capacity guard)
    parameter,      // bad scalar parameter (k < 1, m out of range, ...)
    precondition,   // operation-specific precondition violated
    overflow,       // exact integer arithmetic overflowed
    parse,          // malformed external document
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

constexpr Bits ground_mask(int ground_size) noexcept
{
    return ground_size >= 64 ? ~Bits{0} : (Bits{1} << ground_size) - 1;
}

constexpr bool is_subset(Bits a, Bits b) noexcept { return (a & ~b) == 0; }

/// Ordered list of member bit sets over the ground {0, ..., ground_size-1}.
/// Duplicate members are allowed; the dual of a non-separating system has them.
class Family {
public:
    Family() = default;

    /// Members are taken verbatim; throws if a member uses bits outside the ground.
    Family(int ground_size, std::vector<Bits> members);

    /// Builds members from element-index lists. Duplicate indices inside one member collapse.
    static Family from_indices(int ground_size, const std::vector<std::vector<int>>& members);

    int ground_size() const noexcept { return ground_size_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    Bits operator[](std::size_t i) const { return members_[i]; }
    std::span<const Bits> members() const noexcept { return members_; }

    /// Pairwise-distinct members.
    bool is_proper() const;

    /// Members rendered as sorted element-index lists.
    std::vector<std::vector<int>> index_lists() const;

    friend bool operator==(const Family&, const Family&) = default;

private:
    int ground_size_ = 0;
    std::vector<Bits> members_;
};

struct SeparatorWitness {
    Bits separator = 0;
    Bits key = 0;

    bool well_formed() const noexcept { return is_subset(key, separator); }
    friend bool operator==(const SeparatorWitness&, const SeparatorWitness&) = default;
};

enum class SymmetryGroup { permutations, permutations_and_switching };

// Core transformations. All are pure; the input is never modified.

/// Family of element signatures F_v = {i : v in members[i]}, one member per ground element.
Family dual(const Family& f);

/// Complements bit v in every member.
Family switch_element(const Family& f, int v);

/// Complements every bit of `elements` in every member.
Family switch_elements(const Family& f, Bits elements);

/// Maps element e to perm[e] in every member. perm must be a bijection on the ground.
Family relabel(const Family& f, std::span<const int> perm);

/// Lexicographically least sorted member list over the orbit of f under `group`.
/// Brute force over the group, so the ground is capped at kMaxCanonicalGround.
inline constexpr int kMaxCanonicalGround = 8;
Family canonical_form(const Family& f, SymmetryGroup group);

/// No member is a subset of a different member. Duplicates make this false.
bool is_sperner(const Family& f);

/// Members sorted ascending as unsigned words.
Family sorted(const Family& f);

std::string set_to_string(Bits set);
std::string to_string(const Family& f);

int popcount(Bits b) noexcept;

/// Element indices of a bit set in ascending order.
std::vector<int> elements_of(Bits b);

Bits bits_of(std::initializer_list<int> elements);

} // namespace sepsys
