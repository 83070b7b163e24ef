#include "powmon/automorphism.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

namespace powmon {

namespace {

// sumset over carrier indices, table-backed when the group is small enough
class Multiplier {
  public:
    explicit Multiplier(const PowerContext& ctx) : ctx_(ctx) {
        if (ctx.order() <= kMaxCayleyGroupOrder) table_ = cayley_table(ctx);
    }

    CarrierIndex operator()(CarrierIndex i, CarrierIndex j) const {
        if (table_) return table_->at(i, j);
        return PowerContext::index_of(
            sumset(ctx_, PowerContext::mask_of(i), PowerContext::mask_of(j)));
    }

  private:
    const PowerContext& ctx_;
    std::optional<CayleyTable> table_;
};

}  // namespace

MonoidMap identity_monoid_map(const PowerContext& ctx) {
    MonoidMap m;
    m.image.resize(ctx.carrier_size());
    std::iota(m.image.begin(), m.image.end(), 0);
    return m;
}

bool is_element_automorphism(const PowerContext& ctx, const GroupAutMap& h) {
    const int n = ctx.order();
    if (h.image.size() != static_cast<std::size_t>(n)) return false;
    std::vector<bool> hit(n, false);
    for (ElementIndex v : h.image) {
        if (v >= static_cast<ElementIndex>(n) || hit[v]) return false;
        hit[v] = true;
    }
    if (h.image[0] != 0) return false;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            if (h.image[ctx.add(a, b)] != ctx.add(h.image[a], h.image[b])) return false;
    return true;
}

MonoidMap augmentation(const PowerContext& ctx, const GroupAutMap& h) {
    if (!is_element_automorphism(ctx, h))
        throw invariant_error("augmentation source is not a group automorphism");
    MonoidMap out;
    out.image.resize(ctx.carrier_size());
    for (std::uint64_t i = 0; i < ctx.carrier_size(); ++i) {
        Mask x = PowerContext::mask_of(static_cast<CarrierIndex>(i));
        Mask y = 0;
        while (x) {
            int a = std::countr_zero(x);
            x &= x - 1;
            y |= Mask{1} << h.image[a];
        }
        out.image[i] = PowerContext::index_of(y);
    }
    return out;
}

Outcome<PullbackResult> pullback(const PowerContext& ctx, const MonoidMap& f) {
    if (f.image.size() != ctx.carrier_size())
        return Outcome<PullbackResult>::fail("image table has the wrong length");

    PullbackResult r;
    r.map.image.assign(ctx.order(), 0);
    for (int a = 1; a < ctx.order(); ++a) {
        Mask two = (Mask{1} << a) | 1;
        Mask img = PowerContext::mask_of(f.image[PowerContext::index_of(two)]);
        if (std::popcount(img) != 2)
            return Outcome<PullbackResult>::fail("2-element set " + format_subset(two) +
                                                 " maps to " + format_subset(img));
        r.map.image[a] = static_cast<ElementIndex>(std::countr_zero(img & ~Mask{1}));
    }
    if (!is_element_automorphism(ctx, r.map))
        return Outcome<PullbackResult>::fail("pullback is not a group automorphism");
    r.trivial = r.map.is_identity();
    return Outcome<PullbackResult>::success(std::move(r));
}

bool is_monoid_automorphism(const PowerContext& ctx, const MonoidMap& m) {
    const std::uint64_t c = ctx.carrier_size();
    if (m.image.size() != c) return false;
    std::vector<bool> hit(c, false);
    for (CarrierIndex v : m.image) {
        if (v >= c || hit[v]) return false;
        hit[v] = true;
    }
    if (m.image[0] != 0) return false;  // {0} has carrier index 0
    for (CarrierIndex i = 0; i < c; ++i) {
        Mask xi = PowerContext::mask_of(i);
        Mask fi = PowerContext::mask_of(m.image[i]);
        for (CarrierIndex j = i; j < c; ++j) {
            Mask prod = sumset(ctx, xi, PowerContext::mask_of(j));
            Mask fprod = sumset(ctx, fi, PowerContext::mask_of(m.image[j]));
            if (m.image[PowerContext::index_of(prod)] != PowerContext::index_of(fprod))
                return false;
        }
    }
    return true;
}

MonoidMap compose(const PowerContext&, const MonoidMap& f1, const MonoidMap& f2) {
    MonoidMap out;
    out.image.resize(f2.image.size());
    for (std::size_t i = 0; i < f2.image.size(); ++i) out.image[i] = f1.image[f2.image[i]];
    return out;
}

MonoidMap invert(const PowerContext&, const MonoidMap& f) {
    MonoidMap out;
    out.image.resize(f.image.size());
    for (std::size_t i = 0; i < f.image.size(); ++i) out.image[f.image[i]] = static_cast<CarrierIndex>(i);
    return out;
}

Outcome<MonoidMap> normalize_by_pullback(const PowerContext& ctx, const MonoidMap& f) {
    Outcome<PullbackResult> g = pullback(ctx, f);
    if (!g.ok()) return Outcome<MonoidMap>::fail(g.violation);

    GroupAutMap inv;
    inv.image.resize(g->map.image.size());
    for (std::size_t a = 0; a < g->map.image.size(); ++a)
        inv.image[g->map.image[a]] = static_cast<ElementIndex>(a);
    return Outcome<MonoidMap>::success(compose(ctx, augmentation(ctx, inv), f));
}

Outcome<RestrictedAutomorphism> restrict_to_subgroup(const PowerContext& ctx, const MonoidMap& f,
                                                     const Subgroup& h) {
    if (!is_subgroup_set(ctx, h.members))
        throw invariant_error("restriction base is not a subgroup");

    Mask f_of_h = PowerContext::mask_of(f.image[PowerContext::index_of(h.members)]);
    if (f_of_h != h.members)
        return Outcome<RestrictedAutomorphism>::fail(
            "map does not fix the subgroup: f(" + format_subset(h.members) + ") = " +
            format_subset(f_of_h));

    RestrictedAutomorphism out{make_subgroup_context(ctx, h), {}};
    out.map.image.resize(out.sub.context.carrier_size());
    for (std::uint64_t i = 0; i < out.sub.context.carrier_size(); ++i) {
        Mask parent = extend_mask(out.sub, PowerContext::mask_of(static_cast<CarrierIndex>(i)));
        Mask img = PowerContext::mask_of(f.image[PowerContext::index_of(parent)]);
        if (img & ~h.members)
            return Outcome<RestrictedAutomorphism>::fail(
                "image of " + format_subset(parent) + " leaves the subgroup");
        out.map.image[i] = PowerContext::index_of(restrict_mask(out.sub, img));
    }
    if (!is_monoid_automorphism(out.sub.context, out.map))
        return Outcome<RestrictedAutomorphism>::fail(
            "restriction is not an automorphism of the sub-monoid");
    return Outcome<RestrictedAutomorphism>::success(std::move(out));
}

Outcome<QuotientAutomorphism> induce_on_quotient(const PowerContext& ctx, const MonoidMap& f,
                                                 const Subgroup& h) {
    QuotientAutomorphism out{make_quotient_context(ctx, h), {}};

    // f must permute the H-divisible family for the conjugation to make sense
    for (Mask x : divisible_by_subgroup_family(ctx, h)) {
        Mask img = PowerContext::mask_of(f.image[PowerContext::index_of(x)]);
        if (sumset(ctx, h.members, img) != img)
            return Outcome<QuotientAutomorphism>::fail(
                "map does not stabilize the divisible family: f(" + format_subset(x) +
                ") = " + format_subset(img));
    }

    out.map.image.resize(out.quot.context.carrier_size());
    for (std::uint64_t i = 0; i < out.quot.context.carrier_size(); ++i) {
        Mask lifted = quotient_lift(out.quot.quotient,
                                    PowerContext::mask_of(static_cast<CarrierIndex>(i)));
        Mask img = PowerContext::mask_of(f.image[PowerContext::index_of(lifted)]);
        out.map.image[i] = PowerContext::index_of(quotient_project(out.quot.quotient, img));
    }
    if (!is_monoid_automorphism(out.quot.context, out.map))
        return Outcome<QuotientAutomorphism>::fail(
            "induced map is not an automorphism of the quotient monoid");
    return Outcome<QuotientAutomorphism>::success(std::move(out));
}

namespace {

// cheap isomorphism invariants; maps with trivial pullback preserve each
// one exactly, so equal fingerprints are a sound candidate filter
struct Fingerprint {
    bool idempotent = false;
    Mask stabilizer = 0;   // {a : {0,a} + X == X}
    Mask span = 0;         // stable limit of the nX chain
    int stab_index = 0;
    Mask two_divisors = 0;  // {a : {0,a} divides X}

    bool operator<(const Fingerprint& o) const {
        return std::tie(idempotent, stabilizer, span, stab_index, two_divisors) <
               std::tie(o.idempotent, o.stabilizer, o.span, o.stab_index, o.two_divisors);
    }
    bool operator==(const Fingerprint& o) const {
        return idempotent == o.idempotent && stabilizer == o.stabilizer && span == o.span &&
               stab_index == o.stab_index && two_divisors == o.two_divisors;
    }
};

Fingerprint fingerprint_of(const PowerContext& ctx, Mask x) {
    Fingerprint fp;
    fp.idempotent = is_idempotent(ctx, x);
    for (int a = 0; a < ctx.order(); ++a) {
        ElementIndex e = static_cast<ElementIndex>(a);
        if (ctx.translate(x, e) == x) fp.stabilizer |= Mask{1} << a;
        if (a != 0) {
            // exact 2-element divisor test: the largest possible witness is
            // W = X intersect (X - a); a witness exists iff W works
            Mask w = x & ctx.translate(x, ctx.negate(e));
            if ((w & 1) && (w | ctx.translate(w, e)) == x) fp.two_divisors |= Mask{1} << a;
        }
    }
    StabilizationResult st = stabilization_index(ctx, x);
    fp.span = st.limit;
    fp.stab_index = st.index;
    return fp;
}

struct SearchState {
    std::vector<std::int32_t> image;     // carrier index -> carrier index, -1 unassigned
    std::vector<std::uint8_t> used;
    std::vector<CarrierIndex> assigned;  // in assignment order
};

class TrivialPullbackSearch {
  public:
    TrivialPullbackSearch(const PowerContext& ctx, const SearchBudget& budget)
        : ctx_(ctx), mul_(ctx), budget_(budget) {
        const std::uint64_t c = ctx.carrier_size();
        branch_order_.resize(c);
        std::iota(branch_order_.begin(), branch_order_.end(), 0);
        std::sort(branch_order_.begin(), branch_order_.end(), [](CarrierIndex a, CarrierIndex b) {
            int pa = std::popcount(PowerContext::mask_of(a));
            int pb = std::popcount(PowerContext::mask_of(b));
            if (pa != pb) return pa < pb;
            return a < b;
        });
        std::map<Fingerprint, std::vector<CarrierIndex>> buckets;
        fingerprints_.resize(c);
        for (std::uint64_t i = 0; i < c; ++i) {
            Fingerprint fp = fingerprint_of(ctx, PowerContext::mask_of(static_cast<CarrierIndex>(i)));
            fingerprints_[i] = fp;
            buckets[fp].push_back(static_cast<CarrierIndex>(i));
        }
        bucket_of_.resize(c);
        for (auto& [fp, members] : buckets) {
            pools_.push_back(members);
            for (CarrierIndex m : members) bucket_of_[m] = pools_.size() - 1;
        }
    }

    std::vector<MonoidMap> run(SearchStats* stats) {
        const std::uint64_t c = ctx_.carrier_size();
        SearchState st;
        st.image.assign(c, -1);
        st.used.assign(c, 0);

        // {0} and every 2-element set are pinned; closure forces the whole
        // submonoid they generate
        bool ok = assign(st, 0, 0);
        for (int a = 1; a < ctx_.order() && ok; ++a) {
            CarrierIndex two = PowerContext::index_of((Mask{1} << a) | 1);
            if (st.image[two] == -1)
                ok = assign(st, two, two);
            else
                ok = st.image[two] == static_cast<std::int32_t>(two);
        }
        if (ok) explore(st);

        std::sort(found_.begin(), found_.end());
        if (stats) *stats = stats_;
        return std::move(found_);
    }

  private:
    // assign source -> target and propagate all forced products; every
    // product evaluation counts against the budget
    bool assign(SearchState& st, CarrierIndex src, CarrierIndex dst) {
        if (st.image[src] != -1) return st.image[src] == static_cast<std::int32_t>(dst);
        if (st.used[dst]) return false;
        std::size_t frontier = st.assigned.size();
        push(st, src, dst);
        for (std::size_t i = frontier; i < st.assigned.size(); ++i) {
            CarrierIndex u = st.assigned[i];
            CarrierIndex fu = static_cast<CarrierIndex>(st.image[u]);
            stats_.nodes += i + 1;
            if (stats_.nodes > budget_.max_nodes)
                throw resource_error("search budget exhausted", stats_.nodes);
            for (std::size_t j = 0; j <= i; ++j) {
                CarrierIndex v = st.assigned[j];
                CarrierIndex fv = static_cast<CarrierIndex>(st.image[v]);
                CarrierIndex p = mul_(u, v);
                CarrierIndex q = mul_(fu, fv);
                if (st.image[p] == -1) {
                    if (st.used[q]) return false;
                    if (!(fingerprints_[p] == fingerprints_[q])) return false;
                    push(st, p, q);
                } else if (st.image[p] != static_cast<std::int32_t>(q)) {
                    return false;
                }
            }
        }
        return true;
    }

    void push(SearchState& st, CarrierIndex src, CarrierIndex dst) {
        st.image[src] = static_cast<std::int32_t>(dst);
        st.used[dst] = 1;
        st.assigned.push_back(src);
    }

    void explore(SearchState& st) {
        CarrierIndex next = 0;
        bool complete = true;
        for (CarrierIndex i : branch_order_) {
            if (st.image[i] == -1) {
                next = i;
                complete = false;
                break;
            }
        }
        if (complete) {
            MonoidMap m;
            m.image.assign(st.image.begin(), st.image.end());
            // final gate is the raw definition, independent of every pruning rule
            if (is_monoid_automorphism(ctx_, m)) {
                found_.push_back(std::move(m));
                ++stats_.solutions;
            }
            return;
        }

        for (CarrierIndex candidate : pools_[bucket_of_[next]]) {
            if (st.used[candidate]) continue;
            if (++stats_.nodes > budget_.max_nodes)
                throw resource_error("search budget exhausted", stats_.nodes);
            SearchState branch = st;
            if (assign(branch, next, candidate)) explore(branch);
        }
    }

    const PowerContext& ctx_;
    Multiplier mul_;
    SearchBudget budget_;
    std::vector<CarrierIndex> branch_order_;
    std::vector<Fingerprint> fingerprints_;
    std::vector<std::vector<CarrierIndex>> pools_;
    std::vector<std::size_t> bucket_of_;
    std::vector<MonoidMap> found_;
    SearchStats stats_;
};

}  // namespace

std::vector<MonoidMap> enumerate_trivial_pullback_automorphisms(const PowerContext& ctx,
                                                                const SearchBudget& budget,
                                                                SearchStats* stats) {
    return TrivialPullbackSearch(ctx, budget).run(stats);
}

std::vector<MonoidMap> enumerate_monoid_automorphisms(const PowerContext& ctx,
                                                      const SearchBudget& budget,
                                                      int group_order_bound) {
    if (!ctx.group())
        throw contract_error("enumeration needs a context built from a GroupSpec");
    if (ctx.order() > group_order_bound)
        throw resource_error("group order exceeds the enumeration bound");

    std::vector<MonoidMap> kernel = enumerate_trivial_pullback_automorphisms(ctx, budget);
    std::vector<GroupAutMap> group_autos =
        enumerate_group_automorphisms(*ctx.group(), group_order_bound);

    std::vector<MonoidMap> out;
    out.reserve(kernel.size() * group_autos.size());
    for (const GroupAutMap& h : group_autos) {
        MonoidMap aug = augmentation(ctx, h);
        for (const MonoidMap& k : kernel) out.push_back(compose(ctx, aug, k));
    }
    std::sort(out.begin(), out.end());

    // post-hoc guarantees: distinct, valid, closed under composition
    std::set<std::vector<CarrierIndex>> pool;
    for (const MonoidMap& f : out) {
        if (!pool.insert(f.image).second)
            throw invariant_error("duplicate map in the assembled automorphism list");
        if (!is_monoid_automorphism(ctx, f))
            throw invariant_error("assembled map failed the definition check");
    }
    for (const MonoidMap& a : out)
        for (const MonoidMap& b : out)
            if (!pool.count(compose(ctx, a, b).image))
                throw invariant_error("automorphism list is not closed under composition");
    return out;
}

std::vector<MonoidMap> naive_enumerate(const PowerContext& ctx) {
    const std::uint64_t c = ctx.carrier_size();
    if (c > 8) throw resource_error("carrier too large for the permutation oracle");

    std::vector<CarrierIndex> tail;
    for (CarrierIndex i = 1; i < c; ++i) tail.push_back(i);

    std::vector<MonoidMap> out;
    do {
        MonoidMap m;
        m.image.push_back(0);
        m.image.insert(m.image.end(), tail.begin(), tail.end());
        if (is_monoid_automorphism(ctx, m)) out.push_back(std::move(m));
    } while (std::next_permutation(tail.begin(), tail.end()));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace powmon
