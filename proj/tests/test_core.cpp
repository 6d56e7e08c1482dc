#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "sepsys/family.hpp"
#include "sepsys/verify.hpp"
#include "support.hpp"

using namespace sepsys;
using namespace sepsys::testing;

TEST_CASE("new_family encodes index lists")
{
    const Family f = Family::from_indices(2, {{0, 1}, {1}});
    CHECK(f.ground_size() == 2);
    CHECK(f.size() == 2);
    CHECK(f[0] == 0b11);
    CHECK(f[1] == 0b10);

    const Family empty = Family::from_indices(3, {});
    CHECK(empty.ground_size() == 3);
    CHECK(empty.empty());

    try {
        (void)Family::from_indices(1, {{1}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::construction);
        CHECK(std::string(e.what()).find("index 1") != std::string::npos);
        CHECK(std::string(e.what()).find("member 0") != std::string::npos);
    }
    CHECK_THROWS_AS(Family(65, {}), Error);
    try {
        (void)Family(65, {});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::capacity);
    }
    CHECK(Family(64, {~Bits{0}}).size() == 1);
}

TEST_CASE("is_proper reports duplicates")
{
    CHECK(Family(2, {0b01, 0b10}).is_proper());
    CHECK_FALSE(Family(2, {0b01, 0b10, 0b01}).is_proper());
    CHECK(Family(0, {}).is_proper());
}

TEST_CASE("dual lists element signatures")
{
    // ground {a,b,c} = {0,1,2}; members {a,b}, {b,c}
    const Family f = Family::from_indices(3, {{0, 1}, {1, 2}});
    CHECK(dual(f) == Family::from_indices(2, {{0}, {0, 1}, {1}}));

    const Family g = Family::from_indices(2, {{0, 1}, {1}});
    CHECK(dual(dual(g)) == g);

    const Family twins = Family::from_indices(2, {{0, 1}, {0, 1}});
    const Family d = dual(twins);
    CHECK(d == Family::from_indices(2, {{0, 1}, {0, 1}}));
    CHECK_FALSE(d.is_proper());

    CHECK_THROWS_AS(dual(Family(1, std::vector<Bits>(65, 0))), Error);
}

TEST_CASE("switch complements one element")
{
    const Family f = Family::from_indices(1, {{}, {0}});
    CHECK(switch_element(f, 0) == Family::from_indices(1, {{0}, {}}));
    CHECK_THROWS_AS(switch_element(f, 1), Error);
    CHECK_THROWS_AS(switch_element(f, -1), Error);

    // all 2-subsets of {0..4}: {0,x} -> {x}, {x,y} -> {0,x,y}
    std::vector<Bits> pairs;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            pairs.push_back((Bits{1} << a) | (Bits{1} << b));
    const Family d(5, pairs);
    const Family s = switch_element(d, 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (bit(d[i], 0))
            CHECK(s[i] == (d[i] & ~Bits{1}));
        else
            CHECK(s[i] == (d[i] | 1));
    }
    CHECK(is_nice(d, 2).holds);
    CHECK(is_nice(s, 2).holds);
}

TEST_CASE("relabel maps members through a permutation")
{
    const Family f = Family::from_indices(2, {{0}});
    const std::vector<int> id{0, 1};
    const std::vector<int> swap{1, 0};
    CHECK(relabel(f, id) == f);
    CHECK(relabel(f, swap) == Family::from_indices(2, {{1}}));
    const std::vector<int> bad{0, 0};
    CHECK_THROWS_AS(relabel(f, bad), Error);
    const std::vector<int> short_perm{0};
    CHECK_THROWS_AS(relabel(f, short_perm), Error);
}

TEST_CASE("canonical_form examples")
{
    CHECK(canonical_form(Family::from_indices(2, {{1}}), SymmetryGroup::permutations) ==
          Family::from_indices(2, {{0}}));
    CHECK(canonical_form(Family::from_indices(2, {{0, 1}}), SymmetryGroup::permutations_and_switching) ==
          Family::from_indices(2, {{}}));
    CHECK(canonical_form(Family::from_indices(2, {{0, 1}}), SymmetryGroup::permutations) ==
          Family::from_indices(2, {{0, 1}}));
    CHECK_THROWS_AS(canonical_form(Family(kMaxCanonicalGround + 1, {}), SymmetryGroup::permutations), Error);
}

TEST_CASE("is_sperner examples")
{
    CHECK(is_sperner(Family::from_indices(3, {{0, 1}, {0, 2}, {1, 2}})));
    CHECK_FALSE(is_sperner(Family::from_indices(1, {{}, {0}})));
    CHECK_FALSE(is_sperner(Family::from_indices(4, {{}, {0}, {1}, {0, 2}, {1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 1, 2, 3}})));
    CHECK_FALSE(is_sperner(Family::from_indices(2, {{0}, {0}})));
    CHECK(is_sperner(Family(3, {})));
}

TEST_CASE("dual is an involution on proper separating families")
{
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int m = static_cast<int>(rng() % 7);
        const Family f = random_family(rng, m, 7, true);
        if (!dual(f).is_proper())
            continue;
        ++checked;
        CHECK(dual(dual(f)) == f);
    }
    CHECK(checked > 500);
}

TEST_CASE("switch is an involution and commutes with relabel")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 6);
        const Family f = random_family(rng, m, 8);
        const int v = static_cast<int>(rng() % static_cast<unsigned>(m));
        const auto p = random_permutation(rng, m);
        CHECK(switch_element(switch_element(f, v), v) == f);
        CHECK(relabel(switch_element(f, v), p) == switch_element(relabel(f, p), p[static_cast<std::size_t>(v)]));
        std::vector<int> inv(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
        CHECK(relabel(relabel(f, p), inv) == f);
    }
}

TEST_CASE("canonical_form is constant on orbits and idempotent")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 400; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 5);
        const Family f = random_family(rng, m, 6);
        const auto p = random_permutation(rng, m);
        const Bits w = rng() & ground_mask(m);
        const Family moved = switch_elements(relabel(f, p), w);
        const Family c = canonical_form(f, SymmetryGroup::permutations_and_switching);
        CHECK(canonical_form(moved, SymmetryGroup::permutations_and_switching) == c);
        CHECK(canonical_form(c, SymmetryGroup::permutations_and_switching) == c);
        const Family cp = canonical_form(f, SymmetryGroup::permutations);
        CHECK(canonical_form(relabel(f, p), SymmetryGroup::permutations) == cp);
        CHECK(canonical_form(cp, SymmetryGroup::permutations) == cp);
    }
}

TEST_CASE("equal canonical forms exactly when in the same orbit (two-member families, m = 3)")
{
    const int m = 3;
    std::vector<Family> families;
    for (Bits a = 0; a < 8; ++a)
        for (Bits b = a + 1; b < 8; ++b)
            families.push_back(Family(m, {a, b}));

    // Orbit of a family by applying every group element directly.
    auto orbit = [&](const Family& f) {
        std::set<std::vector<Bits>> out;
        std::vector<int> p{0, 1, 2};
        do {
            for (Bits w = 0; w < 8; ++w) {
                Family g = sorted(switch_elements(relabel(f, p), w));
                out.insert(std::vector<Bits>(g.members().begin(), g.members().end()));
            }
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    };
    for (const auto& f : families) {
        const auto orb = orbit(f);
        for (const auto& g : families) {
            const bool same = orb.count(std::vector<Bits>(g.members().begin(), g.members().end())) > 0;
            CHECK(same == (canonical_form(f, SymmetryGroup::permutations_and_switching) ==
                           canonical_form(g, SymmetryGroup::permutations_and_switching)));
        }
    }
}

TEST_CASE("is_sperner is invariant under relabel but not under switch")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 5);
        const Family f = random_family(rng, m, 6);
        CHECK(is_sperner(f) == naive_sperner(f));
        CHECK(is_sperner(relabel(f, random_permutation(rng, m))) == is_sperner(f));
    }
    // find a concrete family whose Sperner status flips under a switch
    std::optional<std::pair<Family, int>> flip;
    for_each_small_family(2, 2, [&](const Family& f) {
        if (flip)
            return;
        for (int v = 0; v < 2; ++v)
            if (is_sperner(f) != is_sperner(switch_element(f, v)))
                flip = std::make_pair(f, v);
    });
    REQUIRE(flip.has_value());
    CHECK(is_sperner(flip->first) != is_sperner(switch_element(flip->first, flip->second)));
    // [{0},{1}] is an antichain; switching 0 gives [{0,1}, {}], which is a chain
    const Family anti = Family::from_indices(2, {{0}, {1}});
    CHECK(is_sperner(anti));
    CHECK(switch_element(anti, 0) == Family::from_indices(2, {{}, {0, 1}}));
    CHECK_FALSE(is_sperner(switch_element(anti, 0)));
}
