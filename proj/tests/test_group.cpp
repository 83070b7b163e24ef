#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "powmon/group.hpp"

using namespace powmon;

namespace {

ElementIndex idx(const GroupSpec& g, const std::vector<int>& coords) {
    return element_from_coords(g, coords).index;
}

Mask mask_of_elements(const std::vector<ElementIndex>& elems) {
    Mask m = 0;
    for (ElementIndex e : elems) m |= Mask{1} << e;
    return m;
}

// independent oracle: all permutations of G fixing 0 that are homomorphisms
std::vector<std::vector<ElementIndex>> brute_force_group_autos(const GroupSpec& g) {
    std::vector<ElementIndex> perm(g.order);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<ElementIndex>> out;
    do {
        bool ok = true;
        for (int a = 0; a < g.order && ok; ++a)
            for (int b = a; b < g.order && ok; ++b)
                if (perm[add(g, a, b)] != add(g, perm[a], perm[b])) ok = false;
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

// all factor lists (each entry >= 2) with the given product bound
void all_factor_lists(int bound, std::vector<int>& cur, int product,
                      std::vector<std::vector<int>>& out) {
    out.push_back(cur);
    for (int f = 2; product * f <= bound; ++f) {
        cur.push_back(f);
        all_factor_lists(bound, cur, product * f, out);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("make_group canonicalizes factor lists") {
    GroupSpec klein = make_group({2, 2});
    CHECK(klein.invariant_factors == std::vector<int>{2, 2});
    CHECK(klein.order == 4);
    CHECK(klein.rank() == 2);

    GroupSpec c6 = make_group({2, 3});
    CHECK(c6.invariant_factors == std::vector<int>{6});
    CHECK(c6.order == 6);

    GroupSpec trivial = make_group({});
    CHECK(trivial.order == 1);
    CHECK(trivial.rank() == 0);

    CHECK(make_group({4, 6}).invariant_factors == std::vector<int>{2, 12});
    CHECK(make_group({6, 2}).invariant_factors == std::vector<int>{2, 6});
    CHECK(make_group({3, 2, 2}).invariant_factors == std::vector<int>{2, 6});

    CHECK_THROWS_AS(make_group({1}), contract_error);
    CHECK_THROWS_AS(make_group({0}), contract_error);
    CHECK_THROWS_AS(make_group({4, -2}), contract_error);
}

TEST_CASE("element indexing is the mixed-radix bijection") {
    GroupSpec g = make_group({2, 4});
    for (int i = 0; i < g.order; ++i) {
        GroupElement e = element_from_index(g, i);
        CHECK(element_from_coords(g, e.coords).index == static_cast<ElementIndex>(i));
    }
    CHECK(element_from_index(g, 0).coords == std::vector<int>{0, 0});
    CHECK(idx(g, {1, 2}) == 5);  // 1 + 2*2
    CHECK_THROWS_AS(element_from_index(g, 8), contract_error);
    CHECK_THROWS_AS(element_from_coords(g, {0, 4}), contract_error);
}

TEST_CASE("add and negate act componentwise") {
    GroupSpec c4 = make_group({4});
    CHECK(add(c4, 1, 3) == 0);

    GroupSpec g = make_group({2, 4});
    CHECK(add(g, idx(g, {1, 2}), idx(g, {1, 3})) == idx(g, {0, 1}));
    CHECK(negate(g, 0) == 0);

    for (int a = 0; a < g.order; ++a) {
        CHECK(add(g, a, 0) == static_cast<ElementIndex>(a));
        CHECK(add(g, a, negate(g, a)) == 0);
        for (int b = 0; b < g.order; ++b) CHECK(add(g, a, b) == add(g, b, a));
    }
}

TEST_CASE("element_order matches the coordinate formula and Lagrange") {
    GroupSpec c4 = make_group({4});
    CHECK(element_order(c4, 2) == 2);
    CHECK(element_order(c4, 0) == 1);

    GroupSpec g = make_group({2, 4});
    CHECK(element_order(g, idx(g, {1, 1})) == 4);

    for (const auto& factors :
         {std::vector<int>{12}, {2, 6}, {2, 4}, {3, 3}, {2, 2, 2}, {}}) {
        GroupSpec h = make_group(factors);
        for (int a = 0; a < h.order; ++a) {
            int ord = element_order(h, a);
            CHECK(h.order % ord == 0);
            // n*a == 0 exactly when ord | n
            ElementIndex x = 0;
            for (int n = 1; n <= ord; ++n) {
                x = add(h, x, a);
                CHECK((x == 0) == (n % ord == 0));
            }
        }
    }
}

TEST_CASE("subgroup_generated closes the generating set") {
    GroupSpec c4 = make_group({4});
    CHECK(subgroup_generated(c4, {2}).members == mask_of_elements({0, 2}));

    GroupSpec klein = make_group({2, 2});
    CHECK(subgroup_generated(klein, {idx(klein, {1, 0}), idx(klein, {0, 1})}).members ==
          mask_of_elements({0, 1, 2, 3}));

    CHECK(subgroup_generated(c4, {}).members == Mask{1});
    CHECK(subgroup_generated(c4, {}).order == 1);
}

TEST_CASE("enumerate_subgroups finds every subgroup exactly once") {
    CHECK(enumerate_subgroups(make_group({4})).size() == 3);
    CHECK(enumerate_subgroups(make_group({2, 2})).size() == 5);
    CHECK(enumerate_subgroups(make_group({6})).size() == 4);
    CHECK(enumerate_subgroups(make_group({2, 2, 2})).size() == 16);
    CHECK(enumerate_subgroups(make_group({})).size() == 1);

    // brute-force cross-check over all zero-containing subsets
    for (const auto& factors :
         {std::vector<int>{8}, {2, 4}, {2, 2, 2}, {6}, {7}, {2, 2}, {5}}) {
        GroupSpec g = make_group(factors);
        std::set<Mask> brute;
        for (Mask m = 1; m < (Mask{1} << g.order); m += 2)
            if (is_subgroup_mask(g, m)) brute.insert(m);
        std::vector<Subgroup> got = enumerate_subgroups(g);
        CHECK(got.size() == brute.size());
        for (const Subgroup& h : got) {
            CHECK(brute.count(h.members) == 1);
            CHECK(h.order == std::popcount(h.members));
            CHECK(g.order % h.order == 0);
        }
        CHECK(std::is_sorted(got.begin(), got.end()));
    }

    CHECK_THROWS_AS(enumerate_subgroups(make_group({16})), resource_error);
}

TEST_CASE("quotient builds a valid coset table") {
    GroupSpec c4 = make_group({4});
    QuotientGroup q = quotient(c4, Subgroup{mask_of_elements({0, 2}), 2});
    CHECK(q.order == 2);
    CHECK(q.table == std::vector<int>{0, 1, 1, 0});
    CHECK(q.coset_of[0] == 0);
    CHECK(q.coset_of[2] == 0);
    CHECK(q.coset_of[1] == 1);

    GroupSpec klein = make_group({2, 2});
    QuotientGroup q2 = quotient(klein, subgroup_generated(klein, {idx(klein, {1, 0})}));
    CHECK(q2.order == 2);
    CHECK(q2.table == std::vector<int>{0, 1, 1, 0});

    for (int k = 0; k < q.order; ++k) CHECK(q.at(0, k) == k);

    CHECK_THROWS_AS(quotient(c4, Subgroup{mask_of_elements({0, 1}), 2}), invariant_error);
}

TEST_CASE("classify_invariant_factors recovers the canonical chain") {
    CHECK(classify_invariant_factors(make_group({2, 3})) == std::vector<int>{6});
    CHECK(classify_invariant_factors(make_group({2, 2})) == std::vector<int>{2, 2});

    GroupSpec g = make_group({2, 4});
    QuotientGroup q = quotient(g, subgroup_generated(g, {idx(g, {0, 2})}));
    CHECK(classify_invariant_factors(q) == std::vector<int>{2, 2});

    // roundtrip over every factor list with product <= 16
    std::vector<std::vector<int>> lists;
    std::vector<int> cur;
    all_factor_lists(16, cur, 1, lists);
    for (const auto& factors : lists) {
        GroupSpec h = make_group(factors);
        CHECK(classify_invariant_factors(h) == h.invariant_factors);
    }

    std::vector<int> bad = {0, 1, 1, 1};  // 1 has no inverse
    CHECK_THROWS_AS(classify_table_group(2, bad), invariant_error);
    std::vector<int> not_assoc = {0, 1, 2, 1, 0, 1, 2, 2, 0};
    CHECK_THROWS_AS(classify_table_group(3, not_assoc), invariant_error);
}

TEST_CASE("enumerate_group_automorphisms matches the permutation oracle") {
    CHECK(enumerate_group_automorphisms(make_group({2, 2})).size() == 6);
    CHECK(enumerate_group_automorphisms(make_group({4})).size() == 2);
    CHECK(enumerate_group_automorphisms(make_group({2, 2, 2})).size() == 168);
    CHECK(enumerate_group_automorphisms(make_group({})).size() == 1);

    for (const auto& factors : {std::vector<int>{4}, {2, 2}, {6}, {8}, {2, 4}, {2, 2, 2}}) {
        GroupSpec g = make_group(factors);
        std::vector<GroupAutMap> got = enumerate_group_automorphisms(g);
        std::vector<std::vector<ElementIndex>> images;
        for (const GroupAutMap& m : got) {
            CHECK(is_group_automorphism(g, m));
            images.push_back(m.image);
        }
        CHECK(images == brute_force_group_autos(g));
    }

    CHECK_THROWS_AS(enumerate_group_automorphisms(make_group({2, 8})), resource_error);
}

TEST_CASE("automorphism set is closed under composition and inverse") {
    for (const auto& factors : {std::vector<int>{2, 2}, {8}, {2, 4}, {9}}) {
        GroupSpec g = make_group(factors);
        std::vector<GroupAutMap> autos = enumerate_group_automorphisms(g);
        std::set<std::vector<ElementIndex>> pool;
        for (const GroupAutMap& m : autos) pool.insert(m.image);
        for (const GroupAutMap& a : autos) {
            CHECK(pool.count(invert(g, a).image) == 1);
            for (const GroupAutMap& b : autos) CHECK(pool.count(compose(g, a, b).image) == 1);
        }
    }
}
