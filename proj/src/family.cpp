#include "sepsys/family.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "sepsys/kernels.hpp"

namespace sepsys {

namespace {

void check_ground(int ground_size)
{
    if (ground_size < 0)
        throw Error(ErrorKind::construction, "negative ground size " + std::to_string(ground_size));
    if (ground_size > kMaxGround)
        throw Error(ErrorKind::capacity, "ground size " + std::to_string(ground_size) +
                                             " exceeds the 64-element limit");
}

Bits apply_perm(Bits x, std::span<const int> perm)
{
    Bits out = 0;
    while (x != 0) {
        int e = std::countr_zero(x);
        x &= x - 1;
        out |= Bits{1} << perm[static_cast<std::size_t>(e)];
    }
    return out;
}

} // namespace

int popcount(Bits b) noexcept { return std::popcount(b); }

std::vector<int> elements_of(Bits b)
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(std::popcount(b)));
    while (b != 0) {
        out.push_back(std::countr_zero(b));
        b &= b - 1;
    }
    return out;
}

Bits bits_of(std::initializer_list<int> elements)
{
    Bits b = 0;
    for (int e : elements)
        b |= Bits{1} << e;
    return b;
}

Family::Family(int ground_size, std::vector<Bits> members)
    : ground_size_(ground_size), members_(std::move(members))
{
    check_ground(ground_size);
    const Bits outside = ~ground_mask(ground_size);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if ((members_[i] & outside) != 0) {
            int bad = std::countr_zero(members_[i] & outside);
            throw Error(ErrorKind::construction, "member " + std::to_string(i) + ": index " +
                                                     std::to_string(bad) + " out of range for ground size " +
                                                     std::to_string(ground_size));
        }
    }
}

Family Family::from_indices(int ground_size, const std::vector<std::vector<int>>& members)
{
    check_ground(ground_size);
    std::vector<Bits> words;
    words.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        Bits b = 0;
        for (int e : members[i]) {
            if (e < 0 || e >= ground_size)
                throw Error(ErrorKind::construction, "member " + std::to_string(i) + ": index " +
                                                         std::to_string(e) + " out of range for ground size " +
                                                         std::to_string(ground_size));
            b |= Bits{1} << e;
        }
        words.push_back(b);
    }
    return Family(ground_size, std::move(words));
}

bool Family::is_proper() const
{
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (k.find_match(members_.data(), members_.size(), i + 1, ~Bits{0}, members_[i]) != members_.size())
            return false;
    return true;
}

std::vector<std::vector<int>> Family::index_lists() const
{
    std::vector<std::vector<int>> out;
    out.reserve(members_.size());
    for (Bits b : members_)
        out.push_back(elements_of(b));
    return out;
}

Family dual(const Family& f)
{
    if (f.size() > static_cast<std::size_t>(kMaxGround))
        throw Error(ErrorKind::capacity, "dual of a family with " + std::to_string(f.size()) +
                                             " members would exceed the 64-element ground limit");
    std::vector<Bits> signatures(static_cast<std::size_t>(f.ground_size()), 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        Bits m = f[i];
        while (m != 0) {
            signatures[static_cast<std::size_t>(std::countr_zero(m))] |= Bits{1} << i;
            m &= m - 1;
        }
    }
    return Family(static_cast<int>(f.size()), std::move(signatures));
}

Family switch_element(const Family& f, int v)
{
    if (v < 0 || v >= f.ground_size())
        throw Error(ErrorKind::parameter, "switch element " + std::to_string(v) +
                                              " out of range for ground size " + std::to_string(f.ground_size()));
    return switch_elements(f, Bits{1} << v);
}

Family switch_elements(const Family& f, Bits elements)
{
    if (!is_subset(elements, ground_mask(f.ground_size())))
        throw Error(ErrorKind::parameter, "switch set uses elements outside the ground");
    std::vector<Bits> out(f.members().begin(), f.members().end());
    for (Bits& b : out)
        b ^= elements;
    return Family(f.ground_size(), std::move(out));
}

Family relabel(const Family& f, std::span<const int> perm)
{
    const auto m = static_cast<std::size_t>(f.ground_size());
    if (perm.size() != m)
        throw Error(ErrorKind::parameter, "permutation has " + std::to_string(perm.size()) +
                                              " entries, ground has " + std::to_string(m));
    Bits seen = 0;
    for (int p : perm) {
        if (p < 0 || p >= f.ground_size() || ((seen >> p) & 1) != 0)
            throw Error(ErrorKind::parameter, "relabel map is not a bijection on the ground");
        seen |= Bits{1} << p;
    }
    std::vector<Bits> out;
    out.reserve(f.size());
    for (Bits b : f.members())
        out.push_back(apply_perm(b, perm));
    return Family(f.ground_size(), std::move(out));
}

Family sorted(const Family& f)
{
    std::vector<Bits> out(f.members().begin(), f.members().end());
    std::sort(out.begin(), out.end());
    return Family(f.ground_size(), std::move(out));
}

Family canonical_form(const Family& f, SymmetryGroup group)
{
    const int m = f.ground_size();
    if (m > kMaxCanonicalGround)
        throw Error(ErrorKind::capacity, "canonical form is brute force and limited to ground size " +
                                             std::to_string(kMaxCanonicalGround));

    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    const Bits switch_limit = group == SymmetryGroup::permutations_and_switching ? (Bits{1} << m) : 1;

    std::vector<Bits> best(f.members().begin(), f.members().end());
    std::sort(best.begin(), best.end());
    std::vector<Bits> permuted(f.size());
    std::vector<Bits> candidate(f.size());
    do {
        for (std::size_t i = 0; i < f.size(); ++i)
            permuted[i] = apply_perm(f[i], perm);
        for (Bits w = 0; w < switch_limit; ++w) {
            for (std::size_t i = 0; i < f.size(); ++i)
                candidate[i] = permuted[i] ^ w;
            std::sort(candidate.begin(), candidate.end());
            if (candidate < best)
                best.swap(candidate);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Family(m, std::move(best));
}

bool is_sperner(const Family& f)
{
    const auto& k = kernels::active();
    const auto words = f.members();
    // members[i] is a subset of itself; any second superset breaks the antichain
    for (Bits b : words)
        if (k.count_matches(words.data(), words.size(), b, b) > 1)
            return false;
    return true;
}

std::string set_to_string(Bits set)
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e : elements_of(set)) {
        if (!first)
            os << ',';
        os << e;
        first = false;
    }
    os << '}';
    return os.str();
}

std::string to_string(const Family& f)
{
    std::ostringstream os;
    os << "m=" << f.ground_size() << " [";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i != 0)
            os << ", ";
        os << set_to_string(f[i]);
    }
    os << ']';
    return os.str();
}

} // namespace sepsys
