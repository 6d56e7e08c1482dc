#include "sepsys/verify.hpp"

#include <algorithm>
#include <bit>

#include "sepsys/kernels.hpp"

namespace sepsys {

namespace {

void require_k(int k)
{
    if (k < 1)
        throw Error(ErrorKind::parameter, "k must be at least 1, got " + std::to_string(k));
}

// Calls fn(S) for every S within `ground` with popcount s, ascending. fn returns
// true to stop. Returns true if stopped early.
template <typename Fn>
bool for_each_combination(int m, int s, Fn&& fn)
{
    if (s < 0 || s > m)
        return false;
    if (s == 0)
        return fn(Bits{0});
    const Bits limit = ground_mask(m);
    Bits x = ground_mask(s);
    while (true) {
        if (fn(x))
            return true;
        // Gosper's hack: next word with the same popcount
        Bits c = x & (~x + 1);
        Bits r = x + c;
        if (r == 0)
            return false;
        x = (((r ^ x) >> 2) / c) | r;
        if ((x & ~limit) != 0)
            return false;
    }
}

Verdict fail(Property p, int k, std::vector<std::size_t> where, std::string reason)
{
    Verdict v;
    v.holds = false;
    v.certificate.property = p;
    v.certificate.k = k;
    v.counterexample = std::move(where);
    v.reason = std::move(reason);
    return v;
}

} // namespace

std::string_view name(Property p) noexcept
{
    switch (p) {
    case Property::separating:
        return "separating";
    case Property::completely_separating:
        return "completely";
    case Property::hyper_completely:
        return "hcs";
    case Property::hyper_separating:
        return "hs";
    case Property::nice:
        return "nice";
    }
    return "unknown";
}

Verdict is_separating(const Family& f)
{
    const Family d = dual(f);
    const auto sigs = d.members();
    for (std::size_t w = 0; w < sigs.size(); ++w) {
        std::size_t v = kernels::find_match(sigs, 0, ~Bits{0}, sigs[w]);
        if (v < w)
            return fail(Property::separating, 0, {v, w},
                        "elements " + std::to_string(v) + " and " + std::to_string(w) +
                            " lie in exactly the same sets");
    }
    Verdict ok;
    ok.holds = true;
    ok.certificate.property = Property::separating;
    for (std::size_t v = 0; v < sigs.size(); ++v)
        ok.certificate.witnesses.push_back({v, sigs[v], {}});
    return ok;
}

Verdict is_completely_separating(const Family& f)
{
    const Family d = dual(f);
    const auto sigs = d.members();
    // v is completely separated from w iff sig(v) is not a subset of sig(w)
    for (std::size_t v = 0; v < sigs.size(); ++v) {
        std::size_t from = 0;
        while (true) {
            std::size_t w = kernels::find_match(sigs, from, sigs[v], sigs[v]);
            if (w == sigs.size())
                break;
            if (w != v)
                return fail(Property::completely_separating, 0, {v, w},
                            "every set containing " + std::to_string(v) + " also contains " +
                                std::to_string(w));
            from = w + 1;
        }
    }
    Verdict ok;
    ok.holds = true;
    ok.certificate.property = Property::completely_separating;
    for (std::size_t v = 0; v < sigs.size(); ++v)
        ok.certificate.witnesses.push_back({v, sigs[v], {}});
    return ok;
}

Verdict is_k_hypercompletely_separating(const Family& f, int k)
{
    require_k(k);
    const Family d = dual(f);
    const auto sigs = d.members();
    const int members = static_cast<int>(f.size());

    Verdict ok;
    ok.holds = true;
    ok.certificate.property = Property::hyper_completely;
    ok.certificate.k = k;
    for (std::size_t v = 0; v < sigs.size(); ++v) {
        // T (nonempty, |T| <= k, inside sig(v)) intersects to {v} iff no other
        // signature contains T.
        std::optional<Bits> found;
        for (int s = 1; s <= std::min(k, members) && !found; ++s) {
            for_each_combination(members, s, [&](Bits t) {
                if (!is_subset(t, sigs[v]))
                    return false;
                if (kernels::count_matches(sigs, t, t) == 1) {
                    found = t;
                    return true;
                }
                return false;
            });
        }
        if (!found)
            return fail(Property::hyper_completely, k, {v},
                        "no " + std::to_string(k) + " or fewer sets intersect exactly in {" +
                            std::to_string(v) + "}");
        ok.certificate.witnesses.push_back({v, *found, {}});
    }
    return ok;
}

std::optional<SeparatorWitness> find_separator(const Family& d, std::size_t i, int k)
{
    require_k(k);
    if (i >= d.size())
        throw Error(ErrorKind::parameter, "member index " + std::to_string(i) + " out of range for " +
                                              std::to_string(d.size()) + " members");
    const auto words = d.members();
    const Bits target = words[i];
    std::optional<SeparatorWitness> out;
    for (int s = 0; s <= std::min(k, d.ground_size()) && !out; ++s) {
        for_each_combination(d.ground_size(), s, [&](Bits sep) {
            if (kernels::count_matches(words, sep, target & sep) == 1) {
                out = SeparatorWitness{sep, target & sep};
                return true;
            }
            return false;
        });
    }
    return out;
}

std::vector<SeparatorWitness> all_separators(const Family& d, std::size_t i, int k)
{
    require_k(k);
    if (i >= d.size())
        throw Error(ErrorKind::parameter, "member index " + std::to_string(i) + " out of range");
    const auto words = d.members();
    const Bits target = words[i];
    std::vector<SeparatorWitness> out;
    for (int s = 0; s <= std::min(k, d.ground_size()); ++s) {
        for_each_combination(d.ground_size(), s, [&](Bits sep) {
            if (kernels::count_matches(words, sep, target & sep) == 1)
                out.push_back({sep, target & sep});
            return false;
        });
    }
    return out;
}

Verdict is_nice(const Family& d, int k)
{
    require_k(k);
    Verdict ok;
    ok.holds = true;
    ok.certificate.property = Property::nice;
    ok.certificate.k = k;
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto w = find_separator(d, i, k);
        if (!w)
            return fail(Property::nice, k, {i},
                        "member " + std::to_string(i) + " " + set_to_string(d[i]) + " has no separator of size <= " +
                            std::to_string(k));
        ok.certificate.witnesses.push_back({i, 0, *w});
    }
    return ok;
}

Verdict is_k_hyperseparating(const Family& f, int k)
{
    require_k(k);
    Verdict dv = is_nice(dual(f), k);
    dv.certificate.property = Property::hyper_separating;
    if (!dv.holds) {
        std::size_t v = dv.counterexample.front();
        dv.reason = "element " + std::to_string(v) + " is not identified by any " + std::to_string(k) +
                    " or fewer sets";
        return dv;
    }
    // The dual separator already names primal member indices: A_1..A_s are the
    // members in S, and v lies in exactly those listed in the key.
    for (auto& w : dv.certificate.witnesses)
        w.sets = w.separator.separator;
    return dv;
}

PairFamilyVerdict pair_family_valid(const std::vector<SeparatorWitness>& pairs, int m, int k)
{
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (!pairs[i].well_formed())
            throw Error(ErrorKind::precondition, "pair " + std::to_string(i) + ": key " +
                                                     set_to_string(pairs[i].key) + " is not inside separator " +
                                                     set_to_string(pairs[i].separator));

    PairFamilyVerdict out;
    const Bits ground = ground_mask(m);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!is_subset(pairs[i].separator, ground)) {
            out.violation = "pair " + std::to_string(i) + " uses elements outside the ground";
            out.offending = {i};
            return out;
        }
        if (popcount(pairs[i].separator) > k) {
            out.violation = "pair " + std::to_string(i) + " has a separator larger than " + std::to_string(k);
            out.offending = {i};
            return out;
        }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            if (pairs[i].key != pairs[j].key)
                continue;
            const Bits a = pairs[i].separator;
            const Bits b = pairs[j].separator;
            if (a == b) {
                out.violation = "duplicate pair " + set_to_string(a) + "/" + set_to_string(pairs[i].key);
                out.offending = {i, j};
                return out;
            }
            if (is_subset(a, b) || is_subset(b, a)) {
                out.violation = "key " + set_to_string(pairs[i].key) + ": separators " + set_to_string(a) +
                                " and " + set_to_string(b) + " are comparable";
                out.offending = {i, j};
                return out;
            }
        }
    }
    out.valid = true;
    return out;
}

bool check_separator_witness(const Family& d, std::size_t i, const SeparatorWitness& w, int k)
{
    if (i >= d.size() || popcount(w.separator) > k || !w.well_formed())
        return false;
    if ((d[i] & w.separator) != w.key)
        return false;
    for (std::size_t j = 0; j < d.size(); ++j)
        if (j != i && (d[j] & w.separator) == w.key)
            return false;
    return true;
}

bool check_intersection_witness(const Family& f, std::size_t v, Bits sets, int k)
{
    const int count = popcount(sets);
    if (count < 1 || count > k || v >= static_cast<std::size_t>(f.ground_size()))
        return false;
    Bits meet = ground_mask(f.ground_size());
    for (int idx : elements_of(sets)) {
        if (static_cast<std::size_t>(idx) >= f.size())
            return false;
        meet &= f[static_cast<std::size_t>(idx)];
    }
    return meet == Bits{1} << v;
}

namespace {

// v's membership pattern over the members indexed by `sets`, as a bit set over
// member indices.
Bits pattern_of(const Family& f, std::size_t v, Bits sets)
{
    Bits out = 0;
    for (int idx : elements_of(sets))
        if (((f[static_cast<std::size_t>(idx)] >> v) & 1) != 0)
            out |= Bits{1} << idx;
    return out;
}

bool check_primal_pattern_witness(const Family& f, std::size_t v, const SeparatorWitness& w, int k)
{
    const auto n = static_cast<std::size_t>(f.ground_size());
    if (v >= n || popcount(w.separator) > k || !w.well_formed())
        return false;
    for (int idx : elements_of(w.separator))
        if (static_cast<std::size_t>(idx) >= f.size())
            return false;
    if (pattern_of(f, v, w.separator) != w.key)
        return false;
    for (std::size_t u = 0; u < n; ++u)
        if (u != v && pattern_of(f, u, w.separator) == w.key)
            return false;
    return true;
}

} // namespace

bool check_certificate(const Family& f, const Certificate& c)
{
    const auto n = static_cast<std::size_t>(f.ground_size());
    switch (c.property) {
    case Property::separating:
    case Property::completely_separating: {
        if (c.witnesses.size() != n)
            return false;
        for (const auto& w : c.witnesses) {
            if (w.subject >= n || pattern_of(f, w.subject, ground_mask(static_cast<int>(f.size()))) != w.sets)
                return false;
            for (std::size_t u = 0; u < n; ++u) {
                if (u == w.subject)
                    continue;
                const Bits other = pattern_of(f, u, ground_mask(static_cast<int>(f.size())));
                if (c.property == Property::separating ? other == w.sets : is_subset(w.sets, other))
                    return false;
            }
        }
        return true;
    }
    case Property::hyper_completely:
        if (c.witnesses.size() != n)
            return false;
        return std::all_of(c.witnesses.begin(), c.witnesses.end(), [&](const Witness& w) {
            return check_intersection_witness(f, w.subject, w.sets, c.k);
        });
    case Property::hyper_separating:
        if (c.witnesses.size() != n)
            return false;
        return std::all_of(c.witnesses.begin(), c.witnesses.end(), [&](const Witness& w) {
            return check_primal_pattern_witness(f, w.subject, w.separator, c.k);
        });
    case Property::nice:
        if (c.witnesses.size() != f.size())
            return false;
        return std::all_of(c.witnesses.begin(), c.witnesses.end(), [&](const Witness& w) {
            return check_separator_witness(f, w.subject, w.separator, c.k);
        });
    }
    return false;
}

} // namespace sepsys
