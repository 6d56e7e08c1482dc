#include "sepsys/construct.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "sepsys/bounds.hpp"
#include "sepsys/verify.hpp"

namespace sepsys::construct {

namespace {

void require_ground(int n)
{
    if (n > kMaxGround)
        throw Error(ErrorKind::capacity, "n = " + std::to_string(n) + " exceeds the 64-element ground limit");
}

// All j-subsets of {0..m-1} in lexicographic order of their sorted index lists.
std::vector<Bits> lex_subsets(int m, int j)
{
    std::vector<Bits> out;
    std::vector<int> idx(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        Bits b = 0;
        for (int e : idx)
            b |= Bits{1} << e;
        out.push_back(b);
        int pos = j - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - j + pos)
            --pos;
        if (pos < 0)
            break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < j; ++q)
            idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
    return out;
}

// Primal system whose element v has signature labels[v] over m query sets.
Family primal_from_labels(int m, const std::vector<Bits>& labels)
{
    return dual(Family(m, labels));
}

Bits drop_element(Bits w, int x)
{
    const Bits low = (Bits{1} << x) - 1;
    return (w & low) | ((w >> (x + 1)) << x);
}

Family drop_column_and_members(const Family& d, int x, const std::vector<std::size_t>& removed)
{
    std::vector<Bits> out;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (std::find(removed.begin(), removed.end(), i) == removed.end())
            out.push_back(drop_element(d[i], x));
    return Family(d.ground_size() - 1, std::move(out));
}

bool nice2(const Family& d) { return is_nice(d, 2).holds; }

struct PairCandidate {
    int a;
    int b;
    std::size_t first;
    std::size_t second;
};

// Every (S = {a, b}, F, F') where S is a valid separator for both F and F'.
// Ordered by (a, b, F, F'); split by whether the keys differ in one element.
void shared_separator_candidates(const Family& d, std::vector<PairCandidate>& differ_by_one,
                                 std::vector<PairCandidate>& differ_by_two)
{
    const int m = d.ground_size();
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            const Bits s = (Bits{1} << a) | (Bits{1} << b);
            std::vector<std::size_t> unique;
            for (std::size_t i = 0; i < d.size(); ++i) {
                std::size_t same = 0;
                for (std::size_t j = 0; j < d.size(); ++j)
                    same += (d[j] & s) == (d[i] & s);
                if (same == 1)
                    unique.push_back(i);
            }
            for (std::size_t p = 0; p < unique.size(); ++p) {
                for (std::size_t q = p + 1; q < unique.size(); ++q) {
                    const Bits diff = (d[unique[p]] ^ d[unique[q]]) & s;
                    PairCandidate c{a, b, unique[p], unique[q]};
                    if (popcount(diff) == 1)
                        differ_by_one.push_back(c);
                    else
                        differ_by_two.push_back(c);
                }
            }
        }
    }
}

bool x_is_redundant(const Family& g, int x)
{
    const Bits xb = Bits{1} << x;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (const auto& w : all_separators(g, i, 2)) {
            if ((w.separator & xb) == 0)
                continue;
            if (!check_separator_witness(g, i, {w.separator & ~xb, w.key & ~xb}, 2))
                return false;
        }
    }
    return true;
}

} // namespace

std::vector<Bits> covering_subsets(int m, int j, int n)
{
    if (m < 0 || j < 0 || j > m || n < 0)
        throw Error(ErrorKind::parameter, "covering_subsets: bad parameters");
    std::vector<Bits> all = lex_subsets(m, j);
    if (static_cast<std::size_t>(n) > all.size())
        throw Error(ErrorKind::parameter, "cannot choose " + std::to_string(n) + " distinct " + std::to_string(j) +
                                              "-subsets of a " + std::to_string(m) + "-set");
    std::vector<Bits> chosen(all.begin(), all.begin() + n);
    const Bits full = ground_mask(m);
    Bits cover = 0;
    for (Bits b : chosen)
        cover |= b;
    if (cover == full || j == 0 || static_cast<long long>(n) * j < m)
        return chosen;

    // Blocks {0..j-1}, {j..2j-1}, ..., the last one shifted to end at m-1, then
    // the lexicographically first unused subsets; reported in lexicographic order.
    std::vector<bool> used(all.size(), false);
    auto take = [&](Bits b) {
        const auto at = static_cast<std::size_t>(std::find(all.begin(), all.end(), b) - all.begin());
        used[at] = true;
    };
    for (int start = 0; start < m; start += j)
        take(ground_mask(j) << std::min(start, m - j));
    auto taken = std::count(used.begin(), used.end(), true);
    for (std::size_t c = 0; c < all.size() && taken < n; ++c)
        if (!used[c]) {
            used[c] = true;
            ++taken;
        }
    chosen.clear();
    for (std::size_t c = 0; c < all.size(); ++c)
        if (used[c])
            chosen.push_back(all[c]);
    return chosen;
}

Family binary_separating(int n)
{
    if (n < 1)
        throw Error(ErrorKind::parameter, "binary_separating needs n >= 1");
    require_ground(n);
    const int members = bounds::separating_min(static_cast<std::uint64_t>(n));
    std::vector<Bits> out(static_cast<std::size_t>(members), 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < members; ++i)
            if (((j >> i) & 1) != 0)
                out[static_cast<std::size_t>(i)] |= Bits{1} << j;
    return Family(n, std::move(out));
}

Family spencer_completely_separating(int n)
{
    if (n < 2)
        throw Error(ErrorKind::parameter, "spencer construction needs n >= 2");
    require_ground(n);
    const int m = bounds::spencer_min(static_cast<std::uint64_t>(n));
    return primal_from_labels(m, covering_subsets(m, m / 2, n));
}

Family k_hcs_minimal(int n, int k)
{
    if (n < 2 || k < 1)
        throw Error(ErrorKind::parameter, "k_hcs_minimal needs n >= 2 and k >= 1");
    require_ground(n);
    const int m = bounds::min_m_hcs(static_cast<std::uint64_t>(n), k);
    return primal_from_labels(m, covering_subsets(m, bounds::k_prime(m, k), n));
}

Family nice_small_m(int m)
{
    switch (m) {
    case 1:
        return Family(1, {0b0, 0b1});
    case 2:
        return Family(2, {0b00, 0b01, 0b10, 0b11});
    case 3:
        // all 1- and 2-subsets
        return Family(3, {0b001, 0b010, 0b011, 0b100, 0b101, 0b110});
    case 4:
        return Family(4, {bits_of({}), bits_of({0}), bits_of({1}), bits_of({0, 2}), bits_of({1, 3}),
                          bits_of({0, 2, 3}), bits_of({1, 2, 3}), bits_of({0, 1, 2, 3})});
    default:
        throw Error(ErrorKind::parameter, "nice_small_m is defined for m in 1..4, got " + std::to_string(m));
    }
}

std::vector<SeparatorWitness> nice_small_m4_listed_witnesses()
{
    const Family d = nice_small_m(4);
    const Bits seps[] = {bits_of({0, 1}), bits_of({0, 2}), bits_of({1, 3}), bits_of({2, 3}),
                         bits_of({2, 3}), bits_of({1, 3}), bits_of({0, 2}), bits_of({0, 1})};
    std::vector<SeparatorWitness> out;
    for (std::size_t i = 0; i < d.size(); ++i)
        out.push_back({seps[i], d[i] & seps[i]});
    return out;
}

Family hyperseparating_minimal_2(int n)
{
    if (n < 2)
        throw Error(ErrorKind::parameter, "hyperseparating_minimal_2 needs n >= 2");
    require_ground(n);
    // From n = 9 on, ceil(n/2) = 5 = min_m_hcs(n, 2) and the 2-subset dual is exact.
    if (n >= 9)
        return k_hcs_minimal(n, 2);
    const Family d = nice_small_m((n + 1) / 2);
    std::vector<Bits> members(d.members().begin(), d.members().end());
    if (n % 2 != 0)
        members.pop_back();
    return dual(Family(d.ground_size(), std::move(members)));
}

Family antichain_lift(const Family& f)
{
    if (f.empty())
        throw Error(ErrorKind::precondition, "antichain_lift: family is empty");
    if (!f.is_proper())
        throw Error(ErrorKind::precondition, "antichain_lift: family has duplicate members");
    if (!is_sperner(f))
        throw Error(ErrorKind::precondition, "antichain_lift: family is not Sperner");
    const int m = f.ground_size();
    int level = m + 1;
    for (Bits b : f.members())
        level = std::min(level, popcount(b));
    if (!(level + 1 < m - level))
        throw Error(ErrorKind::precondition, "antichain_lift: smallest layer " + std::to_string(level) +
                                                 " fails the counting condition l + 1 < m - l for m = " +
                                                 std::to_string(m));

    std::vector<Bits> out;
    std::vector<Bits> lifted;
    for (Bits b : f.members()) {
        if (popcount(b) != level) {
            out.push_back(b);
            continue;
        }
        Bits free = ground_mask(m) & ~b;
        while (free != 0) {
            lifted.push_back(b | (free & (~free + 1)));
            free &= free - 1;
        }
    }
    std::sort(lifted.begin(), lifted.end());
    lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
    out.insert(out.end(), lifted.begin(), lifted.end());
    return Family(m, std::move(out));
}

std::string_view name(ReductionCase c) noexcept
{
    switch (c) {
    case ReductionCase::shared_separator_keys_differ_by_one:
        return "shared-separator-keys-differ-by-one";
    case ReductionCase::shared_separator_keys_differ_by_two:
        return "shared-separator-keys-differ-by-two";
    case ReductionCase::singleton_separator:
        return "singleton-separator";
    case ReductionCase::no_reduction:
        return "no-reduction";
    }
    return "unknown";
}

ReductionOutcome proof_step_reduction(const Family& d)
{
    if (d.ground_size() < 2)
        throw Error(ErrorKind::precondition, "proof_step_reduction needs ground size >= 2");
    if (!d.is_proper() || !nice2(d))
        throw Error(ErrorKind::precondition, "proof_step_reduction needs a proper nice family (k = 2)");

    ReductionOutcome out;
    std::vector<PairCandidate> by_one;
    std::vector<PairCandidate> by_two;
    shared_separator_candidates(d, by_one, by_two);

    for (const auto& c : by_one) {
        const Bits diff = (d[c.first] ^ d[c.second]) & ((Bits{1} << c.a) | (Bits{1} << c.b));
        const int y = std::countr_zero(diff);
        const int x = y == c.a ? c.b : c.a;
        // Switch so that F contains both x and y; F' then meets {x, y} in {x}.
        Bits flip = 0;
        if (((d[c.first] >> x) & 1) == 0)
            flip |= Bits{1} << x;
        if (((d[c.first] >> y) & 1) == 0)
            flip |= Bits{1} << y;
        const Family normalized = switch_elements(d, flip);

        std::vector<Bits> rest;
        for (std::size_t i = 0; i < normalized.size(); ++i)
            if (i != c.first && i != c.second)
                rest.push_back(normalized[i]);
        const bool redundant = x_is_redundant(Family(d.ground_size(), rest), x);

        Family reduced = drop_column_and_members(normalized, x, {c.first, c.second});
        if (!nice2(reduced)) {
            ++out.rejected_candidates;
            continue;
        }
        out.which = ReductionCase::shared_separator_keys_differ_by_one;
        out.reduced = std::move(reduced);
        out.removed_members = 2;
        out.x = x;
        out.y = y;
        out.removed = {c.first, c.second};
        out.x_redundant = redundant;
        return out;
    }

    for (const auto& c : by_two) {
        const int x = c.a;
        const int y = c.b;
        Bits flip = 0;
        if (((d[c.first] >> x) & 1) == 0)
            flip |= Bits{1} << x;
        if (((d[c.first] >> y) & 1) == 0)
            flip |= Bits{1} << y;
        const Family normalized = switch_elements(d, flip);

        // z takes y's column: members that contained x but not y
        std::vector<Bits> merged;
        for (std::size_t i = 0; i < normalized.size(); ++i) {
            if (i == c.first || i == c.second)
                continue;
            Bits w = normalized[i];
            const bool z = ((w >> x) & 1) != 0 && ((w >> y) & 1) == 0;
            w = (w & ~(Bits{1} << y)) | (z ? Bits{1} << y : 0);
            merged.push_back(drop_element(w, x));
        }
        Family reduced(d.ground_size() - 1, std::move(merged));
        if (!nice2(reduced)) {
            ++out.rejected_candidates;
            continue;
        }
        out.which = ReductionCase::shared_separator_keys_differ_by_two;
        out.reduced = std::move(reduced);
        out.removed_members = 2;
        out.x = x;
        out.y = y;
        out.removed = {c.first, c.second};
        return out;
    }

    for (int x = 0; x < d.ground_size(); ++x) {
        std::size_t holders = 0;
        for (Bits w : d.members())
            holders += (w >> x) & 1;
        // {x} separates some member iff exactly one member has (or lacks) x;
        // after switching x, that member is the only one containing it.
        const bool want = holders == 1;
        if (holders != 1 && d.size() - holders != 1)
            continue;
        std::size_t lone = 0;
        while ((((d[lone] >> x) & 1) != 0) != want)
            ++lone;
        Family reduced = drop_column_and_members(d, x, {lone});
        if (!nice2(reduced)) {
            ++out.rejected_candidates;
            continue;
        }
        out.which = ReductionCase::singleton_separator;
        out.reduced = std::move(reduced);
        out.removed_members = 1;
        out.x = x;
        out.removed = {lone};
        return out;
    }

    out.which = ReductionCase::no_reduction;
    return out;
}

ReductionChain reduce_to_exhaustion(const Family& d)
{
    ReductionChain chain;
    Family current = d;
    std::size_t removed = 0;
    bool irreducible = false;
    while (current.ground_size() >= 2) {
        ReductionOutcome step = proof_step_reduction(current);
        if (step.which == ReductionCase::no_reduction) {
            chain.steps.push_back(std::move(step));
            irreducible = true;
            break;
        }
        removed += step.removed_members;
        current = *step.reduced;
        chain.steps.push_back(std::move(step));
    }
    chain.final_ground = current.ground_size();
    chain.final_size = current.size();
    const int m = current.ground_size();
    // An irreducible family has every member alone behind its own 2-set separator.
    // Below two elements a nice family has at most 2^m <= 2m members (or 1 on an empty ground).
    const std::size_t remainder =
        irreducible ? static_cast<std::size_t>(bounds::binom(m, 2)) : (m == 0 ? 1 : static_cast<std::size_t>(2 * m));
    chain.certified_bound = removed + remainder;
    return chain;
}

} // namespace sepsys::construct
