#include "powmon/power_monoid.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>

namespace powmon {

void PowerContext::init() {
    if (order_ < 1) throw contract_error("group order must be positive");
    if (order_ > kMaxCarrierGroupOrder)
        throw resource_error("group order exceeds the carrier bound");

    negate_.assign(order_, 0);
    element_order_.assign(order_, 1);
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b)
            if (add(a, b) == 0) negate_[a] = static_cast<ElementIndex>(b);
        int k = 1;
        ElementIndex x = static_cast<ElementIndex>(a);
        while (x != 0) {
            x = add(x, static_cast<ElementIndex>(a));
            ++k;
        }
        element_order_[a] = a == 0 ? 1 : k;
    }
}

PowerContext::PowerContext(const GroupSpec& g) : order_(g.order), group_(g) {
    if (g.order > kMaxCarrierGroupOrder)
        throw resource_error("group order exceeds the carrier bound");
    table_.resize(static_cast<std::size_t>(order_) * order_);
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            table_[static_cast<std::size_t>(a) * order_ + b] =
                static_cast<int>(powmon::add(g, a, b));
    init();
}

PowerContext::PowerContext(int order, std::vector<int> add_table)
    : order_(order), table_(std::move(add_table)) {
    validate_abelian_group_table(order_, table_);
    init();
}

Mask sumset(const PowerContext& ctx, Mask x, Mask y) {
    Mask out = 0;
    while (x) {
        int a = std::countr_zero(x);
        x &= x - 1;
        out |= ctx.translate(y, static_cast<ElementIndex>(a));
    }
    return out;
}

Mask n_fold_sum(const PowerContext& ctx, Mask x, int n) {
    if (n < 1) throw contract_error("n-fold sum needs n >= 1");
    Mask acc = 1;  // {0}
    Mask base = x;
    while (n) {
        if (n & 1) acc = sumset(ctx, acc, base);
        n >>= 1;
        if (n) base = sumset(ctx, base, base);
    }
    return acc;
}

StabilizationResult stabilization_index(const PowerContext& ctx, Mask x) {
    Mask cur = x;
    int n = 1;
    while (true) {
        Mask next = sumset(ctx, cur, x);
        if (next == cur) return StabilizationResult{n, cur};
        cur = next;
        ++n;
    }
}

std::optional<Mask> divides(const PowerContext& ctx, Mask x, Mask y) {
    if (x & ~y) return std::nullopt;  // a witness forces X subset of Y
    std::vector<Mask> candidates;
    Mask rest = y & ~Mask{1};
    Mask s = rest;
    while (true) {
        candidates.push_back(s | 1);
        if (s == 0) break;
        s = (s - 1) & rest;
    }
    std::sort(candidates.begin(), candidates.end(), [](Mask a, Mask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    for (Mask z : candidates)
        if (sumset(ctx, x, z) == y) return z;
    return std::nullopt;
}

bool is_idempotent(const PowerContext& ctx, Mask x) { return sumset(ctx, x, x) == x; }

bool is_subgroup_set(const PowerContext& ctx, Mask x) {
    if (!(x & 1)) return false;
    for (int a = 0; a < ctx.order(); ++a) {
        if (!(x >> a & 1)) continue;
        if (!(x >> ctx.negate(static_cast<ElementIndex>(a)) & 1)) return false;
        for (int b = a; b < ctx.order(); ++b) {
            if (!(x >> b & 1)) continue;
            if (!(x >> ctx.add(static_cast<ElementIndex>(a), static_cast<ElementIndex>(b)) & 1))
                return false;
        }
    }
    return true;
}

Mask punctured(const PowerContext& ctx, ElementIndex a) {
    if (a == 0 || a >= static_cast<ElementIndex>(ctx.order()))
        throw contract_error("punctured set needs a nonzero element");
    return ctx.full_mask() & ~(Mask{1} << a);
}

namespace {

// coset masks of h in ctx, in order of smallest representative
std::vector<Mask> coset_masks(const PowerContext& ctx, Mask h) {
    std::vector<Mask> out;
    Mask seen = 0;
    for (int a = 0; a < ctx.order(); ++a) {
        if (seen >> a & 1) continue;
        Mask coset = ctx.translate(h, static_cast<ElementIndex>(a));
        out.push_back(coset);
        seen |= coset;
    }
    return out;
}

}  // namespace

std::vector<Mask> divisible_by_subgroup_family(const PowerContext& ctx, const Subgroup& h) {
    if (!is_subgroup_set(ctx, h.members))
        throw invariant_error("family base is not a subgroup");
    std::vector<Mask> cosets = coset_masks(ctx, h.members);
    const std::size_t q = cosets.size();
    std::vector<Mask> out;
    out.reserve(std::size_t{1} << (q - 1));
    // coset 0 always in; any combination of the others
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << (q - 1)); ++pick) {
        Mask m = cosets[0];
        for (std::size_t j = 1; j < q; ++j)
            if (pick >> (j - 1) & 1) m |= cosets[j];
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Mask quotient_project(const QuotientGroup& q, Mask x) {
    Mask out = 0;
    while (x) {
        int a = std::countr_zero(x);
        x &= x - 1;
        out |= Mask{1} << q.coset_of[a];
    }
    return out;
}

Mask quotient_lift(const QuotientGroup& q, Mask cosets) {
    Mask out = 0;
    for (std::size_t a = 0; a < q.coset_of.size(); ++a)
        if (cosets >> q.coset_of[a] & 1) out |= Mask{1} << a;
    return out;
}

std::vector<Mask> enumerate_carrier(const PowerContext& ctx) {
    std::vector<Mask> out;
    out.reserve(ctx.carrier_size());
    for (std::uint64_t i = 0; i < ctx.carrier_size(); ++i)
        out.push_back(PowerContext::mask_of(static_cast<CarrierIndex>(i)));
    return out;
}

CayleyTable cayley_table(const PowerContext& ctx, int parallelism) {
    if (ctx.order() > kMaxCayleyGroupOrder)
        throw resource_error("group order exceeds the sumset table bound");
    CayleyTable t;
    t.size = static_cast<std::uint32_t>(ctx.carrier_size());
    t.cells.assign(static_cast<std::size_t>(t.size) * t.size, 0);

    auto fill_rows = [&](std::uint32_t lo, std::uint32_t hi) {
        for (std::uint32_t i = lo; i < hi; ++i) {
            Mask x = PowerContext::mask_of(i);
            CarrierIndex* row = t.cells.data() + static_cast<std::size_t>(i) * t.size;
            for (std::uint32_t j = 0; j < t.size; ++j)
                row[j] = PowerContext::index_of(sumset(ctx, x, PowerContext::mask_of(j)));
        }
    };

    parallelism = std::max(1, parallelism);
    if (parallelism == 1 || t.size < 64) {
        fill_rows(0, t.size);
    } else {
        std::vector<std::thread> workers;
        std::uint32_t chunk = (t.size + parallelism - 1) / parallelism;
        for (std::uint32_t lo = 0; lo < t.size; lo += chunk)
            workers.emplace_back(fill_rows, lo, std::min(lo + chunk, t.size));
        for (auto& w : workers) w.join();
    }
    return t;
}

SubgroupContext make_subgroup_context(const PowerContext& ctx, const Subgroup& h) {
    if (!is_subgroup_set(ctx, h.members))
        throw invariant_error("restriction base is not a subgroup");
    std::vector<ElementIndex> elems;
    for (int a = 0; a < ctx.order(); ++a)
        if (h.members >> a & 1) elems.push_back(static_cast<ElementIndex>(a));

    std::vector<int> pos(ctx.order(), -1);
    for (std::size_t k = 0; k < elems.size(); ++k) pos[elems[k]] = static_cast<int>(k);

    const int n = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[static_cast<std::size_t>(i) * n + j] = pos[ctx.add(elems[i], elems[j])];
    return SubgroupContext{PowerContext(n, std::move(table)), std::move(elems)};
}

Mask restrict_mask(const SubgroupContext& sub, Mask parent_mask) {
    Mask out = 0;
    for (std::size_t k = 0; k < sub.sub_elements.size(); ++k)
        if (parent_mask >> sub.sub_elements[k] & 1) out |= Mask{1} << k;
    return out;
}

Mask extend_mask(const SubgroupContext& sub, Mask sub_mask) {
    Mask out = 0;
    for (std::size_t k = 0; k < sub.sub_elements.size(); ++k)
        if (sub_mask >> k & 1) out |= Mask{1} << sub.sub_elements[k];
    return out;
}

QuotientContext make_quotient_context(const PowerContext& ctx, const Subgroup& h) {
    if (!ctx.group())
        throw contract_error("quotient context needs a context built from a GroupSpec");
    QuotientGroup q = quotient(*ctx.group(), h);
    PowerContext qctx(q.order, q.table);
    return QuotientContext{std::move(q), std::move(qctx)};
}

std::string format_subset(Mask m) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1) {
            if (!first) out += ',';
            out += std::to_string(i);
            first = false;
        }
    out += '}';
    return out;
}

}  // namespace powmon
