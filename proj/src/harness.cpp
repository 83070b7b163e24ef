#include "powmon/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace powmon {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "unknown";
}

bool VerificationReport::all_passed() const {
    for (const CheckResult& c : checks)
        if (c.status == CheckStatus::fail) return false;
    return true;
}

bool VerificationReport::any_skipped() const {
    for (const CheckResult& c : checks)
        if (c.status == CheckStatus::skipped) return true;
    return false;
}

std::vector<Subgroup> carrier_subgroups(const PowerContext& ctx) {
    std::vector<Subgroup> out;
    for (std::uint64_t i = 0; i < ctx.carrier_size(); ++i) {
        Mask m = PowerContext::mask_of(static_cast<CarrierIndex>(i));
        if (is_subgroup_set(ctx, m)) out.push_back(Subgroup{m, std::popcount(m)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

template <class Body>
CheckResult run_check(const char* name, Body&& body) {
    CheckResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    body(r);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    return r;
}

void fail(CheckResult& r, std::string witness) {
    if (r.status == CheckStatus::fail) return;  // keep the first witness
    r.status = CheckStatus::fail;
    r.witness = std::move(witness);
}

Mask image_mask(const MonoidMap& f, Mask x) {
    return PowerContext::mask_of(f.image[PowerContext::index_of(x)]);
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// trivial-pullback normalization shared by the condition checks; returns
// false (and fails r) when even the pullback is broken
bool normalized_map(const PowerContext& ctx, const MonoidMap& f, CheckResult& r, MonoidMap& out) {
    Outcome<PullbackResult> pb = pullback(ctx, f);
    if (!pb.ok()) {
        fail(r, "pullback violation: " + pb.violation);
        return false;
    }
    if (pb->trivial) {
        out = f;
        return true;
    }
    Outcome<MonoidMap> n = normalize_by_pullback(ctx, f);
    if (!n.ok()) {
        fail(r, "normalization violation: " + n.violation);
        return false;
    }
    r.note = "checked on the trivial-pullback normalization";
    out = *n;
    return true;
}

}  // namespace

CheckResult check_subgroup_preservation(const PowerContext& ctx, const MonoidMap& f) {
    return run_check("subgroup_preservation", [&](CheckResult& r) {
        for (const Subgroup& h : carrier_subgroups(ctx)) {
            Mask img = image_mask(f, h.members);
            if (!is_subgroup_set(ctx, img))
                return fail(r, "f(" + format_subset(h.members) + ") = " + format_subset(img) +
                                   " is not a subgroup");
            if (std::popcount(img) != h.order)
                return fail(r, "|f(" + format_subset(h.members) + ")| = " +
                                   std::to_string(std::popcount(img)) + " != " +
                                   std::to_string(h.order));
        }
    });
}

CheckResult check_pullback_laws(const PowerContext& ctx, const MonoidMap& f) {
    return run_check("pullback_laws", [&](CheckResult& r) {
        Outcome<PullbackResult> pb = pullback(ctx, f);
        if (!pb.ok()) return fail(r, pb.violation);
        const GroupAutMap& g = pb->map;

        for (int a = 1; a < ctx.order(); ++a) {
            ElementIndex ga = g.image[a];
            if (ctx.element_order(ga) != ctx.element_order(a))
                return fail(r, "ord(g(" + std::to_string(a) + ")) = " +
                                   std::to_string(ctx.element_order(ga)) + " != ord(" +
                                   std::to_string(a) + ") = " +
                                   std::to_string(ctx.element_order(a)));
            ElementIndex na = static_cast<ElementIndex>(a);
            ElementIndex nga = ga;
            for (int n = 2; n < ctx.element_order(a); ++n) {
                na = ctx.add(na, static_cast<ElementIndex>(a));
                nga = ctx.add(nga, ga);
                if (g.image[na] != nga)
                    return fail(r, "g(" + std::to_string(n) + "*" + std::to_string(a) +
                                       ") != " + std::to_string(n) + "*g(" + std::to_string(a) +
                                       ")");
            }
        }

        for (const Subgroup& h : carrier_subgroups(ctx)) {
            Mask pointwise = 0;
            for (int a = 0; a < ctx.order(); ++a)
                if (h.members >> a & 1) pointwise |= Mask{1} << g.image[a];
            Mask img = image_mask(f, h.members);
            if (img != pointwise)
                return fail(r, "f(" + format_subset(h.members) + ") = " + format_subset(img) +
                                   " but the pullback image is " + format_subset(pointwise));
        }
    });
}

CheckResult check_substructure_laws(const PowerContext& ctx, const MonoidMap& f) {
    return run_check("substructure_laws", [&](CheckResult& r) {
        MonoidMap n;
        if (!normalized_map(ctx, f, r, n)) return;

        for (const Subgroup& h : carrier_subgroups(ctx)) {
            // restriction downstairs keeps being a trivial-pullback automorphism
            Mask img = image_mask(n, h.members);
            if (img != h.members)
                return fail(r, "subgroup " + format_subset(h.members) + " moved to " +
                                   format_subset(img));
            Outcome<RestrictedAutomorphism> res = restrict_to_subgroup(ctx, n, h);
            if (!res.ok()) return fail(r, "restriction to " + format_subset(h.members) +
                                              " failed: " + res.violation);
            Outcome<PullbackResult> sub_pb = pullback(res->sub.context, res->map);
            if (!sub_pb.ok() || !sub_pb->trivial)
                return fail(r, "restriction to " + format_subset(h.members) +
                                   " does not have trivial pullback");

            // the projection onto G/H is an isomorphism on the divisible family
            std::vector<Mask> family = divisible_by_subgroup_family(ctx, h);
            QuotientContext qc = make_quotient_context(ctx, h);
            std::set<Mask> images;
            for (Mask x : family) images.insert(quotient_project(qc.quotient, x));
            if (images.size() != family.size() ||
                images.size() != qc.context.carrier_size())
                return fail(r, "projection modulo " + format_subset(h.members) +
                                   " is not a bijection onto the quotient carrier");
            for (Mask x : family)
                for (Mask y : family) {
                    Mask lhs = quotient_project(qc.quotient, sumset(ctx, x, y));
                    Mask rhs = sumset(qc.context, quotient_project(qc.quotient, x),
                                      quotient_project(qc.quotient, y));
                    if (lhs != rhs)
                        return fail(r, "projection modulo " + format_subset(h.members) +
                                           " is not a homomorphism at " + format_subset(x) +
                                           ", " + format_subset(y));
                }

            // the map stabilizes the family and induces a trivial-pullback
            // automorphism of the quotient monoid
            for (Mask x : family) {
                Mask fx = image_mask(n, x);
                if (sumset(ctx, h.members, fx) != fx)
                    return fail(r, "family of " + format_subset(h.members) +
                                       " not stabilized: f(" + format_subset(x) + ") = " +
                                       format_subset(fx));
            }
            Outcome<QuotientAutomorphism> ind = induce_on_quotient(ctx, n, h);
            if (!ind.ok())
                return fail(r, "induction on the quotient by " + format_subset(h.members) +
                                   " failed: " + ind.violation);
            Outcome<PullbackResult> q_pb = pullback(ind->quot.context, ind->map);
            if (!q_pb.ok() || !q_pb->trivial)
                return fail(r, "induced map on the quotient by " + format_subset(h.members) +
                                   " does not have trivial pullback");
        }

        // punctured sets go to punctured sets; fixed from order 3 upward
        for (int a = 1; a < ctx.order(); ++a) {
            Mask ga = punctured(ctx, static_cast<ElementIndex>(a));
            Mask img = image_mask(n, ga);
            if (std::popcount(img) != ctx.order() - 1)
                return fail(r, "f(" + format_subset(ga) + ") = " + format_subset(img) +
                                   " is not a punctured set");
            int b = std::countr_zero(ctx.full_mask() & ~img);
            if (ctx.element_order(a) >= 3 && img != ga)
                return fail(r, "punctured set of " + std::to_string(a) +
                                   " (order >= 3) not fixed: image misses " + std::to_string(b));
            if (ctx.element_order(a) == 2 && ctx.element_order(b) != 2)
                return fail(r, "punctured set of the involution " + std::to_string(a) +
                                   " maps to the punctured set of " + std::to_string(b) +
                                   " of order " + std::to_string(ctx.element_order(b)));
        }
    });
}

CheckResult check_identity_on_proper_submonoids(const PowerContext& ctx, const MonoidMap& f) {
    return run_check("identity_on_proper_submonoids", [&](CheckResult& r) {
        MonoidMap n;
        if (!normalized_map(ctx, f, r, n)) return;
        for (const Subgroup& h : carrier_subgroups(ctx)) {
            if (h.members == ctx.full_mask()) continue;
            Outcome<RestrictedAutomorphism> res = restrict_to_subgroup(ctx, n, h);
            if (!res.ok())
                return fail(r, "restriction to " + format_subset(h.members) +
                                   " failed: " + res.violation);
            if (!res->map.is_identity())
                return fail(r, "restriction to " + format_subset(h.members) +
                                   " is not the identity");
        }
    });
}

CheckResult check_identity_on_prime_quotients(const PowerContext& ctx, const MonoidMap& f) {
    return run_check("identity_on_prime_quotients", [&](CheckResult& r) {
        MonoidMap n;
        if (!normalized_map(ctx, f, r, n)) return;
        for (const Subgroup& h : carrier_subgroups(ctx)) {
            if (!is_prime(h.order)) continue;
            Outcome<QuotientAutomorphism> ind = induce_on_quotient(ctx, n, h);
            if (!ind.ok())
                return fail(r, "induction on the quotient by " + format_subset(h.members) +
                                   " failed: " + ind.violation);
            if (!ind->map.is_identity())
                return fail(r, "induced map on the quotient by " + format_subset(h.members) +
                                   " is not the identity");
        }
    });
}

namespace {

bool is_klein_shaped(const PowerContext& ctx) {
    if (ctx.order() != 4) return false;
    for (int a = 1; a < 4; ++a)
        if (ctx.element_order(a) != 2) return false;
    return true;
}

}  // namespace

CheckResult check_locality_implies_identity(const PowerContext& ctx, const MonoidMap& f) {
    return run_check("locality_implies_identity", [&](CheckResult& r) {
        if (is_klein_shaped(ctx)) {
            r.note = "not claimed for the Klein four-group";
            return;
        }
        MonoidMap n;
        if (!normalized_map(ctx, f, r, n)) return;
        CheckResult a = check_identity_on_proper_submonoids(ctx, f);
        CheckResult b = check_identity_on_prime_quotients(ctx, f);
        if (a.status != CheckStatus::pass || b.status != CheckStatus::pass) {
            r.note = "premises do not hold for this map";
            return;
        }
        if (!n.is_identity())
            fail(r, "both locality conditions hold but the map is not the identity");
    });
}

namespace {

// positions of the 2-element and 3-element sets in the [2,2] carrier
struct KleinSplit {
    std::vector<CarrierIndex> twos;
    std::vector<CarrierIndex> threes;
};

KleinSplit klein_split(const PowerContext& ctx) {
    KleinSplit s;
    for (std::uint64_t i = 0; i < ctx.carrier_size(); ++i) {
        int pc = std::popcount(PowerContext::mask_of(static_cast<CarrierIndex>(i)));
        if (pc == 2) s.twos.push_back(static_cast<CarrierIndex>(i));
        if (pc == 3) s.threes.push_back(static_cast<CarrierIndex>(i));
    }
    return s;
}

// where each listed position goes, as a permutation of {0,1,2}
std::vector<int> action_on(const MonoidMap& f, const std::vector<CarrierIndex>& positions) {
    std::vector<int> perm;
    for (CarrierIndex p : positions) {
        auto it = std::find(positions.begin(), positions.end(), f.image[p]);
        if (it == positions.end()) return {};
        perm.push_back(static_cast<int>(it - positions.begin()));
    }
    return perm;
}

}  // namespace

CheckResult verify_klein_exception(const PowerContext& ctx, const SearchBudget& budget) {
    if (!is_klein_shaped(ctx) || !ctx.group())
        throw contract_error("the exceptional check only applies to the Klein four-group");

    return run_check("klein_exception", [&](CheckResult& r) {
        std::vector<MonoidMap> autos = enumerate_monoid_automorphisms(ctx, budget);
        if (autos.size() != 36)
            return fail(r, "expected 36 automorphisms, found " + std::to_string(autos.size()));

        KleinSplit split = klein_split(ctx);
        // every cardinality-preserving bijection fixing {0} and G
        std::vector<MonoidMap> expected;
        std::vector<int> p2{0, 1, 2};
        do {
            std::vector<int> p3{0, 1, 2};
            do {
                MonoidMap m = identity_monoid_map(ctx);
                for (int k = 0; k < 3; ++k) {
                    m.image[split.twos[k]] = split.twos[p2[k]];
                    m.image[split.threes[k]] = split.threes[p3[k]];
                }
                expected.push_back(std::move(m));
            } while (std::next_permutation(p3.begin(), p3.end()));
        } while (std::next_permutation(p2.begin(), p2.end()));
        std::sort(expected.begin(), expected.end());
        if (autos != expected)
            return fail(r, "automorphisms differ from the cardinality-preserving bijections");

        std::set<std::pair<std::vector<int>, std::vector<int>>> pairs;
        std::set<std::vector<int>> on_twos, on_threes;
        for (const MonoidMap& m : autos) {
            std::vector<int> a2 = action_on(m, split.twos);
            std::vector<int> a3 = action_on(m, split.threes);
            if (a2.empty() || a3.empty())
                return fail(r, "an automorphism does not preserve the cardinality classes");
            pairs.insert({a2, a3});
            on_twos.insert(a2);
            on_threes.insert(a3);
        }
        if (pairs.size() != 36 || on_twos.size() != 6 || on_threes.size() != 6)
            return fail(r, "the action does not split as the full product of two symmetric "
                           "groups: " +
                               std::to_string(pairs.size()) + " pairs, " +
                               std::to_string(on_twos.size()) + " x " +
                               std::to_string(on_threes.size()) + " factors");
    });
}

VerificationReport verify_group(const GroupSpec& g, const SearchBudget& budget,
                                int group_order_bound) {
    VerificationReport rep;
    rep.group = g.invariant_factors;
    rep.exceptional = g.invariant_factors == std::vector<int>{2, 2};

    std::vector<MonoidMap> kernel;
    std::vector<GroupAutMap> group_autos;
    std::vector<MonoidMap> autos;
    try {
        if (g.order > group_order_bound)
            throw resource_error("group order exceeds the enumeration bound");
        PowerContext probe(g);
        kernel = enumerate_trivial_pullback_automorphisms(probe, budget);
        group_autos = enumerate_group_automorphisms(g, group_order_bound);
        autos = enumerate_monoid_automorphisms(probe, budget, group_order_bound);
    } catch (const resource_error& e) {
        CheckResult skip;
        skip.name = "enumeration";
        skip.status = CheckStatus::skipped;
        skip.note = e.what();
        rep.checks.push_back(std::move(skip));
        return rep;
    }
    PowerContext ctx(g);

    rep.aut_g_order = group_autos.size();
    rep.aut_p0g_order = autos.size();

    rep.checks.push_back(run_check("aut_order_match", [&](CheckResult& r) {
        std::uint64_t expected = rep.exceptional ? 36 : rep.aut_g_order;
        if (rep.aut_p0g_order != expected)
            fail(r, "|Aut(P0(G))| = " + std::to_string(rep.aut_p0g_order) + ", expected " +
                        std::to_string(expected));
    }));

    if (rep.exceptional) {
        rep.checks.push_back(verify_klein_exception(ctx, budget));
    } else {
        rep.checks.push_back(run_check("augmentation_completeness", [&](CheckResult& r) {
            if (kernel.size() != 1 || !kernel[0].is_identity())
                return fail(r, "trivial-pullback set has " + std::to_string(kernel.size()) +
                                   " maps instead of just the identity");
            for (const MonoidMap& f : autos) {
                Outcome<PullbackResult> pb = pullback(ctx, f);
                if (!pb.ok()) return fail(r, pb.violation);
                if (!(augmentation(ctx, pb->map) == f))
                    return fail(r, "map is not the augmentation of its pullback");
            }
        }));
    }

    struct NamedCheck {
        const char* name;
        CheckResult (*fn)(const PowerContext&, const MonoidMap&);
    };
    static constexpr NamedCheck per_map[] = {
        {"subgroup_preservation", check_subgroup_preservation},
        {"pullback_laws", check_pullback_laws},
        {"substructure_laws", check_substructure_laws},
        {"identity_on_proper_submonoids", check_identity_on_proper_submonoids},
        {"identity_on_prime_quotients", check_identity_on_prime_quotients},
        {"locality_implies_identity", check_locality_implies_identity},
    };
    for (const NamedCheck& nc : per_map) {
        CheckResult agg;
        agg.name = nc.name;
        for (std::size_t i = 0; i < autos.size(); ++i) {
            CheckResult one = nc.fn(ctx, autos[i]);
            agg.elapsed_ms += one.elapsed_ms;
            if (one.status == CheckStatus::fail && agg.status != CheckStatus::fail) {
                agg.status = CheckStatus::fail;
                agg.witness = "automorphism #" + std::to_string(i) + ": " + one.witness;
            }
        }
        rep.checks.push_back(std::move(agg));
    }
    return rep;
}

namespace {

void descending_partitions(int n, int max_part, std::vector<int>& cur,
                           std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        descending_partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> abelian_groups_up_to(int max_order) {
    if (max_order < 1) throw contract_error("max order must be at least 1");

    std::vector<std::vector<int>> out;
    for (int n = 1; n <= max_order; ++n) {
        // prime-by-prime exponent partitions, recombined into one chain
        std::map<int, int> pf;
        int rest = n;
        for (int p = 2; p * p <= rest; ++p)
            while (rest % p == 0) {
                ++pf[p];
                rest /= p;
            }
        if (rest > 1) ++pf[rest];

        std::vector<std::vector<std::vector<int>>> per_prime;  // partition choices per prime
        std::vector<int> primes;
        for (const auto& [p, e] : pf) {
            primes.push_back(p);
            std::vector<std::vector<int>> parts;
            std::vector<int> cur;
            descending_partitions(e, e, cur, parts);
            per_prime.push_back(std::move(parts));
        }

        std::vector<std::size_t> pick(per_prime.size(), 0);
        while (true) {
            std::vector<int> factors;
            for (std::size_t i = 0; i < per_prime.size(); ++i)
                for (int e : per_prime[i][pick[i]]) {
                    int pw = 1;
                    for (int k = 0; k < e; ++k) pw *= primes[i];
                    factors.push_back(pw);
                }
            out.push_back(make_group(factors).invariant_factors);
            if (per_prime.empty()) break;
            std::size_t slot = per_prime.size() - 1;
            while (true) {
                if (++pick[slot] < per_prime[slot].size()) break;
                pick[slot] = 0;
                if (slot == 0) goto next_order;
                --slot;
            }
        }
    next_order:;
    }

    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        long long oa = 1, ob = 1;
        for (int f : a) oa *= f;
        for (int f : b) ob *= f;
        if (oa != ob) return oa < ob;
        return a < b;
    });
    return out;
}

}  // namespace powmon
