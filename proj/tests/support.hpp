#pragma once

// Test-only oracles written straight from the definitions, with no shared code
// paths with the library beyond the Family container.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "sepsys/family.hpp"

namespace sepsys::testing {

inline bool bit(Bits b, int i) { return ((b >> i) & 1) != 0; }

// v's membership pattern over the members selected by `which`.
inline Bits naive_pattern(const Family& f, int v, Bits which)
{
    Bits p = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (bit(which, static_cast<int>(i)) && bit(f[i], v))
            p |= Bits{1} << i;
    return p;
}

inline bool naive_separating(const Family& f)
{
    for (int v = 0; v < f.ground_size(); ++v)
        for (int w = v + 1; w < f.ground_size(); ++w) {
            bool split = false;
            for (Bits s : f.members())
                split = split || bit(s, v) != bit(s, w);
            if (!split)
                return false;
        }
    return true;
}

inline bool naive_completely_separating(const Family& f)
{
    for (int v = 0; v < f.ground_size(); ++v)
        for (int w = 0; w < f.ground_size(); ++w) {
            if (v == w)
                continue;
            bool found = false;
            for (Bits s : f.members())
                found = found || (bit(s, v) && !bit(s, w));
            if (!found)
                return false;
        }
    return true;
}

// Every element is the intersection of 1..k members. Needs f.size() <= 20.
inline bool naive_hcs(const Family& f, int k)
{
    const Bits all = (Bits{1} << f.size()) - 1;
    for (int v = 0; v < f.ground_size(); ++v) {
        bool ok = false;
        for (Bits t = 1; t <= all && !ok; ++t) {
            if (popcount(t) > k)
                continue;
            Bits meet = ground_mask(f.ground_size());
            for (std::size_t i = 0; i < f.size(); ++i)
                if (bit(t, static_cast<int>(i)))
                    meet &= f[i];
            ok = meet == (Bits{1} << v);
        }
        if (!ok)
            return false;
    }
    return true;
}

// Every element is singled out by its pattern on at most k members.
inline bool naive_hs(const Family& f, int k)
{
    const Bits all = (Bits{1} << f.size()) - 1;
    for (int v = 0; v < f.ground_size(); ++v) {
        bool ok = false;
        for (Bits t = 0; t <= all && !ok; ++t) {
            if (popcount(t) > k)
                continue;
            bool unique = true;
            for (int w = 0; w < f.ground_size() && unique; ++w)
                unique = w == v || naive_pattern(f, w, t) != naive_pattern(f, v, t);
            ok = unique;
        }
        if (!ok)
            return false;
    }
    return true;
}

inline bool naive_member_separable(const Family& d, std::size_t i, int k)
{
    for (Bits s = 0; s <= ground_mask(d.ground_size()); ++s) {
        if (popcount(s) > k)
            continue;
        bool unique = true;
        for (std::size_t j = 0; j < d.size() && unique; ++j)
            unique = j == i || (d[j] & s) != (d[i] & s);
        if (unique)
            return true;
    }
    return false;
}

inline bool naive_nice(const Family& d, int k)
{
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!naive_member_separable(d, i, k))
            return false;
    return true;
}

// Each member owns a subset of size <= k lying in no other member.
inline bool naive_unique_subset(const Family& d, int k)
{
    for (std::size_t i = 0; i < d.size(); ++i) {
        bool owns = false;
        for (Bits s = 0; s <= d[i] && !owns; ++s) {
            if ((s & ~d[i]) != 0 || popcount(s) > k)
                continue;
            bool alone = true;
            for (std::size_t j = 0; j < d.size() && alone; ++j)
                alone = j == i || (s & ~d[j]) != 0;
            owns = alone;
        }
        if (!owns)
            return false;
    }
    return true;
}

inline bool naive_sperner(const Family& f)
{
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j)
            if (i != j && (f[i] & ~f[j]) == 0)
                return false;
    return true;
}

// Calls fn on every family of distinct subsets of an m-ground (m <= 4),
// members ascending.
inline void for_each_set_family(int m, const std::function<void(const Family&)>& fn)
{
    const unsigned universe = 1u << m;
    const std::uint64_t count = std::uint64_t{1} << universe;
    std::vector<Bits> members;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        members.clear();
        for (unsigned x = 0; x < universe; ++x)
            if (((mask >> x) & 1) != 0)
                members.push_back(x);
        fn(Family(m, members));
    }
}

// Calls fn on every multiset of at most max_members subsets of an m-ground,
// as a nondecreasing member list.
inline void for_each_small_family(int m, int max_members, const std::function<void(const Family&)>& fn)
{
    const Bits universe = Bits{1} << m;
    std::vector<Bits> members;
    std::function<void(Bits)> go = [&](Bits from) {
        fn(Family(m, members));
        if (static_cast<int>(members.size()) == max_members)
            return;
        for (Bits x = from; x < universe; ++x) {
            members.push_back(x);
            go(x);
            members.pop_back();
        }
    };
    go(0);
}

inline Family random_family(std::mt19937_64& rng, int m, int max_members, bool distinct = false)
{
    std::uniform_int_distribution<int> size_dist(0, max_members);
    const int target = size_dist(rng);
    std::vector<Bits> members;
    const Bits mask = ground_mask(m);
    int guard = 0;
    while (static_cast<int>(members.size()) < target && guard++ < 10000) {
        Bits x = rng() & mask;
        if (distinct && std::find(members.begin(), members.end(), x) != members.end())
            continue;
        members.push_back(x);
    }
    return Family(m, members);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int m)
{
    std::vector<int> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        p[static_cast<std::size_t>(i)] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace sepsys::testing
