#include "powmon/group.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

namespace powmon {

namespace {

// prime -> exponent, by trial division
std::map<int, int> factorize(int n) {
    std::map<int, int> out;
    for (int p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

std::vector<int> chain_from_prime_parts(const std::map<int, std::vector<int>>& exps) {
    std::size_t slots = 0;
    for (const auto& [p, es] : exps) slots = std::max(slots, es.size());
    // factors built largest-first, emitted as an ascending chain
    std::vector<int> chain;
    for (std::size_t j = 0; j < slots; ++j) {
        long long n = 1;
        for (const auto& [p, es] : exps) {
            if (j < es.size()) {
                for (int k = 0; k < es[j]; ++k) n *= p;
            }
        }
        if (n > 1) chain.push_back(static_cast<int>(n));
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace

GroupSpec make_group(const std::vector<int>& factors) {
    std::map<int, std::vector<int>> exps;
    long long order = 1;
    for (int f : factors) {
        if (f < 2) throw contract_error("group factors must be >= 2");
        order *= f;
        if (order > (1 << 21))
            throw contract_error("group order exceeds the representable range");
        for (const auto& [p, e] : factorize(f)) exps[p].push_back(e);
    }
    for (auto& [p, es] : exps) std::sort(es.begin(), es.end(), std::greater<>());

    GroupSpec g;
    g.invariant_factors = chain_from_prime_parts(exps);
    g.order = static_cast<int>(order);
    return g;
}

GroupElement element_from_index(const GroupSpec& g, ElementIndex index) {
    if (index >= static_cast<ElementIndex>(g.order))
        throw contract_error("element index out of range");
    GroupElement e;
    e.index = index;
    ElementIndex rest = index;
    for (int f : g.invariant_factors) {
        e.coords.push_back(static_cast<int>(rest % f));
        rest /= f;
    }
    return e;
}

GroupElement element_from_coords(const GroupSpec& g, const std::vector<int>& coords) {
    if (coords.size() != g.invariant_factors.size())
        throw contract_error("coordinate count does not match group rank");
    GroupElement e;
    e.coords = coords;
    ElementIndex index = 0;
    ElementIndex base = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        int f = g.invariant_factors[i];
        int c = coords[i];
        if (c < 0 || c >= f) throw contract_error("coordinate out of range");
        index += static_cast<ElementIndex>(c) * base;
        base *= f;
    }
    e.index = index;
    return e;
}

ElementIndex add(const GroupSpec& g, ElementIndex a, ElementIndex b) {
    ElementIndex out = 0;
    ElementIndex base = 1;
    for (int f : g.invariant_factors) {
        ElementIndex ca = a % f;
        ElementIndex cb = b % f;
        out += ((ca + cb) % f) * base;
        a /= f;
        b /= f;
        base *= f;
    }
    return out;
}

ElementIndex negate(const GroupSpec& g, ElementIndex a) {
    ElementIndex out = 0;
    ElementIndex base = 1;
    for (int f : g.invariant_factors) {
        ElementIndex ca = a % f;
        out += ((f - ca) % f) * base;
        a /= f;
        base *= f;
    }
    return out;
}

int element_order(const GroupSpec& g, ElementIndex a) {
    long long ord = 1;
    for (int f : g.invariant_factors) {
        int c = static_cast<int>(a % f);
        int local = f / std::gcd(c, f);
        ord = std::lcm(ord, static_cast<long long>(local));
        a /= f;
    }
    return static_cast<int>(ord);
}

Subgroup subgroup_generated(const GroupSpec& g, const std::vector<ElementIndex>& gens) {
    Mask mask = 1;
    for (ElementIndex x : gens) {
        if (x >= static_cast<ElementIndex>(g.order))
            throw contract_error("generator index out of range");
        mask |= Mask{1} << x;
    }
    // close under addition; negation follows from finite element orders
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < g.order; ++a) {
            if (!(mask >> a & 1)) continue;
            for (int b = a; b < g.order; ++b) {
                if (!(mask >> b & 1)) continue;
                Mask bit = Mask{1} << add(g, a, b);
                if (!(mask & bit)) {
                    mask |= bit;
                    changed = true;
                }
            }
        }
    }
    return Subgroup{mask, std::popcount(mask)};
}

bool is_subgroup_mask(const GroupSpec& g, Mask mask) {
    if (!(mask & 1)) return false;
    for (int a = 0; a < g.order; ++a) {
        if (!(mask >> a & 1)) continue;
        if (!(mask >> negate(g, a) & 1)) return false;
        for (int b = a; b < g.order; ++b) {
            if (!(mask >> b & 1)) continue;
            if (!(mask >> add(g, a, b) & 1)) return false;
        }
    }
    return true;
}

std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g, int order_bound) {
    if (g.order > order_bound)
        throw resource_error("group order exceeds the subgroup enumeration bound");

    std::set<Mask> seen;
    std::vector<Mask> queue;
    seen.insert(1);
    queue.push_back(1);
    // breadth-first closure over single-generator extensions
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Mask h = queue[head];
        for (int x = 1; x < g.order; ++x) {
            if (h >> x & 1) continue;
            std::vector<ElementIndex> gens;
            for (int a = 1; a < g.order; ++a)
                if (h >> a & 1) gens.push_back(a);
            gens.push_back(x);
            Mask ext = subgroup_generated(g, gens).members;
            if (seen.insert(ext).second) queue.push_back(ext);
        }
    }

    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (Mask m : seen) out.push_back(Subgroup{m, std::popcount(m)});
    std::sort(out.begin(), out.end());
    return out;
}

QuotientGroup quotient(const GroupSpec& g, const Subgroup& h) {
    if (!is_subgroup_mask(g, h.members))
        throw invariant_error("quotient modulus is not a subgroup");

    QuotientGroup q;
    q.parent = g;
    q.modulus = h;
    q.coset_of.assign(g.order, -1);
    for (int a = 0; a < g.order; ++a) {
        if (q.coset_of[a] >= 0) continue;
        int id = static_cast<int>(q.coset_reps.size());
        q.coset_reps.push_back(static_cast<ElementIndex>(a));
        for (int x = 0; x < g.order; ++x)
            if (h.members >> x & 1) q.coset_of[add(g, a, x)] = id;
    }
    q.order = static_cast<int>(q.coset_reps.size());
    q.table.assign(static_cast<std::size_t>(q.order) * q.order, 0);
    for (int i = 0; i < q.order; ++i)
        for (int j = 0; j < q.order; ++j)
            q.table[static_cast<std::size_t>(i) * q.order + j] =
                q.coset_of[add(g, q.coset_reps[i], q.coset_reps[j])];
    return q;
}

namespace {

// order of element a in a table group
int table_element_order(int order, const std::vector<int>& table, int a) {
    int k = 1;
    int x = a;
    while (x != 0) {
        x = table[static_cast<std::size_t>(x) * order + a];
        ++k;
        if (k > order) throw invariant_error("table row does not cycle back to 0");
    }
    return k;
}

}  // namespace

void validate_abelian_group_table(int order, const std::vector<int>& table) {
    if (order < 1 || table.size() != static_cast<std::size_t>(order) * order)
        throw invariant_error("addition table has the wrong shape");
    auto at = [&](int a, int b) { return table[static_cast<std::size_t>(a) * order + b]; };
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (at(a, b) < 0 || at(a, b) >= order)
                throw invariant_error("addition table entry out of range");
    for (int k = 0; k < order; ++k)
        if (at(0, k) != k || at(k, 0) != k)
            throw invariant_error("element 0 is not an identity");
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (at(a, b) != at(b, a)) throw invariant_error("addition table is not abelian");
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
                if (at(at(a, b), c) != at(a, at(b, c)))
                    throw invariant_error("addition table is not associative");
    for (int a = 0; a < order; ++a) {
        bool has_inverse = false;
        for (int b = 0; b < order; ++b)
            if (at(a, b) == 0) has_inverse = true;
        if (!has_inverse) throw invariant_error("addition table has a non-invertible element");
    }
}

std::vector<int> classify_table_group(int order, const std::vector<int>& table) {
    validate_abelian_group_table(order, table);

    std::vector<int> orders(order);
    for (int a = 0; a < order; ++a) orders[a] = table_element_order(order, table, a);

    std::map<int, std::vector<int>> exps;  // prime -> descending exponent list
    for (const auto& [p, e] : factorize(order)) {
        // m_k = log_p #{x : ord(x) | p^k}; the differences m_k - m_{k-1}
        // form the conjugate of the exponent partition of the p-part
        std::vector<int> m{0};
        long long pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            int count = 0;
            for (int a = 0; a < order; ++a)
                if (pk % orders[a] == 0) ++count;
            int logc = 0;
            long long acc = 1;
            while (acc < count) {
                acc *= p;
                ++logc;
            }
            if (acc != count) throw invariant_error("order profile is not a p-group profile");
            m.push_back(logc);
        }
        std::vector<int> conj;
        for (std::size_t k = 1; k < m.size(); ++k) conj.push_back(m[k] - m[k - 1]);
        std::vector<int> lambda;  // descending
        for (int i = 1;; ++i) {
            int cnt = 0;
            for (int c : conj)
                if (c >= i) ++cnt;
            if (cnt == 0) break;
            lambda.push_back(cnt);
        }
        // lambda is the exponent partition in descending order
        std::sort(lambda.begin(), lambda.end(), std::greater<>());
        exps[p] = lambda;
    }
    return chain_from_prime_parts(exps);
}

std::vector<int> classify_invariant_factors(const GroupSpec& g) {
    std::vector<int> table(static_cast<std::size_t>(g.order) * g.order);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            table[static_cast<std::size_t>(a) * g.order + b] = static_cast<int>(add(g, a, b));
    return classify_table_group(g.order, table);
}

std::vector<int> classify_invariant_factors(const QuotientGroup& q) {
    return classify_table_group(q.order, q.table);
}

bool is_group_automorphism(const GroupSpec& g, const GroupAutMap& m) {
    if (m.image.size() != static_cast<std::size_t>(g.order)) return false;
    std::vector<bool> hit(g.order, false);
    for (ElementIndex v : m.image) {
        if (v >= static_cast<ElementIndex>(g.order) || hit[v]) return false;
        hit[v] = true;
    }
    if (m.image[0] != 0) return false;
    for (int a = 0; a < g.order; ++a)
        for (int b = a; b < g.order; ++b)
            if (m.image[add(g, a, b)] != add(g, m.image[a], m.image[b])) return false;
    return true;
}

GroupAutMap compose(const GroupSpec& g, const GroupAutMap& f1, const GroupAutMap& f2) {
    GroupAutMap out;
    out.image.resize(g.order);
    for (int a = 0; a < g.order; ++a) out.image[a] = f1.image[f2.image[a]];
    return out;
}

GroupAutMap invert(const GroupSpec& g, const GroupAutMap& f) {
    GroupAutMap out;
    out.image.resize(g.order);
    for (int a = 0; a < g.order; ++a) out.image[f.image[a]] = static_cast<ElementIndex>(a);
    return out;
}

std::vector<GroupAutMap> enumerate_group_automorphisms(const GroupSpec& g, int order_bound) {
    if (g.order > order_bound)
        throw resource_error("group order exceeds the automorphism enumeration bound");

    const int r = g.rank();
    if (r == 0) return {GroupAutMap{{0}}};

    // candidate images per basis element: everything its order can map to
    std::vector<std::vector<ElementIndex>> candidates(r);
    std::vector<ElementIndex> basis(r);
    ElementIndex base = 1;
    for (int i = 0; i < r; ++i) {
        basis[i] = base;
        base *= g.invariant_factors[i];
        for (int x = 0; x < g.order; ++x)
            if (g.invariant_factors[i] % element_order(g, x) == 0)
                candidates[i].push_back(static_cast<ElementIndex>(x));
    }

    std::vector<GroupAutMap> out;
    std::vector<std::size_t> pick(r, 0);
    std::vector<ElementIndex> image(g.order);
    std::vector<bool> hit(g.order);
    while (true) {
        // image of (c_1,...,c_r) is sum of c_i copies of the picked images
        image[0] = 0;
        for (int a = 1; a < g.order; ++a) {
            GroupElement e = element_from_index(g, a);
            ElementIndex v = 0;
            for (int i = 0; i < r; ++i) {
                ElementIndex target = candidates[i][pick[i]];
                for (int k = 0; k < e.coords[i]; ++k) v = add(g, v, target);
            }
            image[a] = v;
        }
        std::fill(hit.begin(), hit.end(), false);
        bool bijective = true;
        for (ElementIndex v : image) {
            if (hit[v]) {
                bijective = false;
                break;
            }
            hit[v] = true;
        }
        if (bijective) out.push_back(GroupAutMap{image});

        int slot = r - 1;
        while (slot >= 0 && ++pick[slot] == candidates[slot].size()) pick[slot--] = 0;
        if (slot < 0) break;
    }

    std::sort(out.begin(), out.end(),
              [](const GroupAutMap& a, const GroupAutMap& b) { return a.image < b.image; });
    return out;
}

}  // namespace powmon
