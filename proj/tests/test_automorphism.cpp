#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "powmon/automorphism.hpp"

using namespace powmon;

namespace {

Mask mk(const std::vector<ElementIndex>& elems) {
    Mask m = 0;
    for (ElementIndex e : elems) m |= Mask{1} << e;
    return m;
}

CarrierIndex ci(const std::vector<ElementIndex>& elems) {
    return PowerContext::index_of(mk(elems));
}

// swap the images of two carrier positions
MonoidMap swapped(MonoidMap m, CarrierIndex a, CarrierIndex b) {
    std::swap(m.image[a], m.image[b]);
    return m;
}

}  // namespace

TEST_CASE("augmentation applies a group automorphism elementwise") {
    GroupSpec c4 = make_group({4});
    PowerContext ctx(c4);

    MonoidMap id = augmentation(ctx, GroupAutMap{{0, 1, 2, 3}});
    CHECK(id.is_identity());

    GroupAutMap neg{{0, 3, 2, 1}};
    MonoidMap f = augmentation(ctx, neg);
    CHECK(f.image[ci({0, 1})] == ci({0, 3}));
    CHECK(is_monoid_automorphism(ctx, f));

    GroupSpec klein = make_group({2, 2});
    PowerContext kctx(klein);
    GroupAutMap swap_ab{{0, 2, 1, 3}};
    MonoidMap g = augmentation(kctx, swap_ab);
    CHECK(g.image[ci({0, 1, 2})] == ci({0, 1, 2}));

    CHECK_THROWS_AS(augmentation(ctx, GroupAutMap{{0, 1, 1, 3}}), invariant_error);
    CHECK_THROWS_AS(augmentation(ctx, GroupAutMap{{0, 2, 1, 3}}), invariant_error);  // not a hom
}

TEST_CASE("augmentation is injective and always lands in the automorphisms") {
    for (const auto& factors : {std::vector<int>{8}, {2, 4}, {2, 2}, {6}, {2, 2, 2}}) {
        GroupSpec g = make_group(factors);
        PowerContext ctx(g);
        std::set<std::vector<CarrierIndex>> images;
        for (const GroupAutMap& h : enumerate_group_automorphisms(g)) {
            MonoidMap f = augmentation(ctx, h);
            CHECK(is_monoid_automorphism(ctx, f));
            CHECK(images.insert(f.image).second);
        }
    }
}

TEST_CASE("pullback undoes augmentation") {
    GroupSpec g = make_group({2, 4});
    PowerContext ctx(g);
    for (const GroupAutMap& h : enumerate_group_automorphisms(g)) {
        Outcome<PullbackResult> r = pullback(ctx, augmentation(ctx, h));
        REQUIRE(r.ok());
        CHECK(r->map == h);
        CHECK(r->trivial == h.is_identity());
    }

    Outcome<PullbackResult> id = pullback(ctx, identity_monoid_map(ctx));
    REQUIRE(id.ok());
    CHECK(id->trivial);
}

TEST_CASE("a 3-cycle on the Klein three-sets has trivial pullback") {
    PowerContext ctx(make_group({2, 2}));
    MonoidMap f = identity_monoid_map(ctx);
    // the three 3-element sets, cycled
    CarrierIndex s0 = ci({0, 1, 2}), s1 = ci({0, 1, 3}), s2 = ci({0, 2, 3});
    f.image[s0] = s1;
    f.image[s1] = s2;
    f.image[s2] = s0;
    CHECK(is_monoid_automorphism(ctx, f));
    Outcome<PullbackResult> r = pullback(ctx, f);
    REQUIRE(r.ok());
    CHECK(r->trivial);
}

TEST_CASE("is_monoid_automorphism rejects a transposition of {0,1} and {0,3} in C4") {
    PowerContext ctx(make_group({4}));
    MonoidMap f = swapped(identity_monoid_map(ctx), ci({0, 1}), ci({0, 3}));
    CHECK(!is_monoid_automorphism(ctx, f));
    // the violated product: {0,1}+{0,1} = {0,1,2} but the images give {0,2,3}
    CHECK(sumset(ctx, mk({0, 1}), mk({0, 1})) == mk({0, 1, 2}));
    CHECK(sumset(ctx, mk({0, 3}), mk({0, 3})) == mk({0, 2, 3}));
}

TEST_CASE("compose and invert are the permutation operations") {
    PowerContext ctx(make_group({2, 2}));
    std::vector<MonoidMap> autos = enumerate_monoid_automorphisms(ctx);
    for (const MonoidMap& f : autos) {
        CHECK(compose(ctx, f, invert(ctx, f)).is_identity());
        CHECK(compose(ctx, identity_monoid_map(ctx), f) == f);
    }
}

TEST_CASE("pullback distributes over composition") {
    for (const auto& factors : {std::vector<int>{4}, {2, 2}, {6}, {5}}) {
        GroupSpec g = make_group(factors);
        PowerContext ctx(g);
        std::vector<MonoidMap> autos = enumerate_monoid_automorphisms(ctx);
        for (const MonoidMap& f1 : autos)
            for (const MonoidMap& f2 : autos) {
                Outcome<PullbackResult> lhs = pullback(ctx, compose(ctx, f1, f2));
                Outcome<PullbackResult> r1 = pullback(ctx, f1);
                Outcome<PullbackResult> r2 = pullback(ctx, f2);
                REQUIRE(lhs.ok());
                REQUIRE(r1.ok());
                REQUIRE(r2.ok());
                CHECK(lhs->map == compose(g, r1->map, r2->map));
            }
    }
}

TEST_CASE("normalize_by_pullback strips the augmentation part") {
    GroupSpec klein = make_group({2, 2});
    PowerContext ctx(klein);

    for (const GroupAutMap& h : enumerate_group_automorphisms(klein)) {
        Outcome<MonoidMap> n = normalize_by_pullback(ctx, augmentation(ctx, h));
        REQUIRE(n.ok());
        CHECK(n->is_identity());
    }

    // augmentation composed with a kernel map normalizes back to the kernel map
    MonoidMap k = identity_monoid_map(ctx);
    CarrierIndex s0 = ci({0, 1, 2}), s1 = ci({0, 1, 3}), s2 = ci({0, 2, 3});
    k.image[s0] = s1;
    k.image[s1] = s2;
    k.image[s2] = s0;
    for (const GroupAutMap& h : enumerate_group_automorphisms(klein)) {
        MonoidMap f = compose(ctx, augmentation(ctx, h), k);
        Outcome<MonoidMap> n = normalize_by_pullback(ctx, f);
        REQUIRE(n.ok());
        CHECK(*n == k);
        Outcome<PullbackResult> p = pullback(ctx, *n);
        REQUIRE(p.ok());
        CHECK(p->trivial);
    }
}

TEST_CASE("restriction to a fixed subgroup") {
    GroupSpec g = make_group({2, 4});
    PowerContext ctx(g);
    Subgroup whole{ctx.full_mask(), g.order};

    Outcome<RestrictedAutomorphism> r =
        restrict_to_subgroup(ctx, identity_monoid_map(ctx), whole);
    REQUIRE(r.ok());
    CHECK(r->map.is_identity());

    // an augmentation with h(H) = H restricts to the augmentation of h|H
    Subgroup h2 = subgroup_generated(g, {element_from_coords(g, {0, 1}).index});
    for (const GroupAutMap& h : enumerate_group_automorphisms(g)) {
        Mask image_of_h2 = 0;
        for (int a = 0; a < g.order; ++a)
            if (h2.members >> a & 1) image_of_h2 |= Mask{1} << h.image[a];
        MonoidMap f = augmentation(ctx, h);
        Outcome<RestrictedAutomorphism> res = restrict_to_subgroup(ctx, f, h2);
        if (image_of_h2 != h2.members) {
            CHECK(!res.ok());
            continue;
        }
        REQUIRE(res.ok());
        GroupAutMap h_restricted;
        h_restricted.image.resize(res->sub.sub_elements.size());
        for (std::size_t k = 0; k < res->sub.sub_elements.size(); ++k) {
            ElementIndex img = h.image[res->sub.sub_elements[k]];
            auto it = std::find(res->sub.sub_elements.begin(), res->sub.sub_elements.end(), img);
            h_restricted.image[k] =
                static_cast<ElementIndex>(it - res->sub.sub_elements.begin());
        }
        CHECK(res->map == augmentation(res->sub.context, h_restricted));
    }
}

TEST_CASE("induction on a quotient") {
    GroupSpec g = make_group({2, 4});
    PowerContext ctx(g);

    Subgroup trivial_subgroup{1, 1};
    Outcome<QuotientAutomorphism> q =
        induce_on_quotient(ctx, identity_monoid_map(ctx), trivial_subgroup);
    REQUIRE(q.ok());
    CHECK(q->map.is_identity());
    CHECK(q->quot.context.order() == g.order);

    // identity induces the identity on every quotient
    for (const Subgroup& h : enumerate_subgroups(g)) {
        Outcome<QuotientAutomorphism> r = induce_on_quotient(ctx, identity_monoid_map(ctx), h);
        REQUIRE(r.ok());
        CHECK(r->map.is_identity());
    }
}

TEST_CASE("trivial-pullback enumeration matches the statement-level counts") {
    SUBCASE("cyclic groups have only the identity") {
        for (const auto& factors : {std::vector<int>{4}, {5}, {6}, {7}, {8}, {9}}) {
            PowerContext ctx(make_group(factors));
            std::vector<MonoidMap> k = enumerate_trivial_pullback_automorphisms(ctx);
            REQUIRE(k.size() == 1);
            CHECK(k[0].is_identity());
        }
    }
    SUBCASE("the Klein four-group has the six cardinality-preserving kernels") {
        PowerContext ctx(make_group({2, 2}));
        std::vector<MonoidMap> k = enumerate_trivial_pullback_automorphisms(ctx);
        CHECK(k.size() == 6);
        for (const MonoidMap& f : k) {
            CHECK(is_monoid_automorphism(ctx, f));
            Outcome<PullbackResult> p = pullback(ctx, f);
            REQUIRE(p.ok());
            CHECK(p->trivial);
        }
    }
    SUBCASE("budget exhaustion raises a resource error") {
        PowerContext ctx(make_group({2, 2}));
        CHECK_THROWS_AS(
            enumerate_trivial_pullback_automorphisms(ctx, SearchBudget{1}), resource_error);
    }
}

TEST_CASE("full enumeration equals the permutation-filter oracle for tiny groups") {
    for (const auto& factors : {std::vector<int>{2}, {3}, {4}, {2, 2}}) {
        PowerContext ctx(make_group(factors));
        std::vector<MonoidMap> pruned = enumerate_monoid_automorphisms(ctx);
        std::vector<MonoidMap> naive = naive_enumerate(ctx);
        CHECK(pruned == naive);
    }
    CHECK(naive_enumerate(PowerContext(make_group({2}))).size() == 1);
    CHECK(naive_enumerate(PowerContext(make_group({2, 2}))).size() == 36);
    CHECK(naive_enumerate(PowerContext(make_group({4}))).size() == 2);
    CHECK_THROWS_AS(naive_enumerate(PowerContext(make_group({5}))), resource_error);
}

TEST_CASE("enumerated counts for the small sweep") {
    CHECK(enumerate_monoid_automorphisms(PowerContext(make_group({2}))).size() == 1);
    CHECK(enumerate_monoid_automorphisms(PowerContext(make_group({2, 2}))).size() == 36);
    CHECK(enumerate_monoid_automorphisms(PowerContext(make_group({6}))).size() == 2);
    CHECK(enumerate_monoid_automorphisms(PowerContext(make_group({2, 4}))).size() == 8);
}
