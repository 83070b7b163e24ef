#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powmon/power_monoid.hpp"

namespace powmon {

/// A (candidate) automorphism of the power monoid, as a carrier-index image
/// table. Only maps that have passed is_monoid_automorphism are known to be
/// automorphisms; everything else is a candidate.
struct MonoidMap {
    std::vector<CarrierIndex> image;

    bool is_identity() const {
        for (std::size_t i = 0; i < image.size(); ++i)
            if (image[i] != i) return false;
        return true;
    }
    bool operator==(const MonoidMap& other) const { return image == other.image; }
    bool operator<(const MonoidMap& other) const { return image < other.image; }
};

/// The group bijection read off the images of the 2-element sets.
struct PullbackResult {
    GroupAutMap map;
    bool trivial = false;
};

/// Statement failures are results, not exceptions: the harness exists to
/// catch them if they ever show up, and corrupted maps must flow through
/// the checks without crashing anything.
template <class T>
struct Outcome {
    std::optional<T> value;
    std::string violation;

    bool ok() const { return value.has_value(); }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }

    static Outcome success(T v) { return Outcome{std::move(v), {}}; }
    static Outcome fail(std::string what) { return Outcome{std::nullopt, std::move(what)}; }
};

MonoidMap identity_monoid_map(const PowerContext& ctx);

/// Elementwise image validator usable on any context (with or without a
/// GroupSpec attached).
bool is_element_automorphism(const PowerContext& ctx, const GroupAutMap& h);

/// The automorphism X -> {h(x) : x in X}. Throws invariant_error when h is
/// not an automorphism of the underlying group.
MonoidMap augmentation(const PowerContext& ctx, const GroupAutMap& h);

/// Reads g off f({0,a}) = {0,g(a)} and validates it as a group
/// automorphism. Fails when some 2-element set maps to another cardinality
/// or when g is not an automorphism; for true automorphisms of the monoid
/// neither can happen.
Outcome<PullbackResult> pullback(const PowerContext& ctx, const MonoidMap& f);

/// Raw definition check: permutation fixing {0} that preserves every
/// pairwise sumset.
bool is_monoid_automorphism(const PowerContext& ctx, const MonoidMap& m);

/// f1 after f2.
MonoidMap compose(const PowerContext& ctx, const MonoidMap& f1, const MonoidMap& f2);
MonoidMap invert(const PowerContext& ctx, const MonoidMap& f);

/// Composes f with the augmentation of the inverse pullback; the result has
/// trivial pullback.
Outcome<MonoidMap> normalize_by_pullback(const PowerContext& ctx, const MonoidMap& f);

/// f cut down to the power monoid of a subgroup it fixes setwise.
struct RestrictedAutomorphism {
    SubgroupContext sub;
    MonoidMap map;
};

Outcome<RestrictedAutomorphism> restrict_to_subgroup(const PowerContext& ctx, const MonoidMap& f,
                                                     const Subgroup& h);

/// f conjugated through the projection onto G/H, defined on the family of
/// H-divisible sets.
struct QuotientAutomorphism {
    QuotientContext quot;
    MonoidMap map;
};

Outcome<QuotientAutomorphism> induce_on_quotient(const PowerContext& ctx, const MonoidMap& f,
                                                 const Subgroup& h);

/// Node accounting covers branch attempts and every propagation product,
/// so the budget is a hard stop on total work, not just on branching.
struct SearchBudget {
    std::uint64_t max_nodes = 1'000'000'000;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
};

/// The complete set of automorphisms fixing every 2-element set, by
/// exhaustive backtracking over carrier images in (cardinality, mask) order.
/// Pruning uses only consequences of "automorphism fixing all 2-element
/// sets" (forced products of assigned sets, and equality of cheap
/// isomorphism invariants), so the enumeration is provably complete; every
/// full assignment is confirmed with the raw definition check before it is
/// returned. Output is sorted by image table. Throws resource_error (with
/// node statistics) when the budget runs out.
std::vector<MonoidMap> enumerate_trivial_pullback_automorphisms(const PowerContext& ctx,
                                                                const SearchBudget& budget = {},
                                                                SearchStats* stats = nullptr);

/// All automorphisms, assembled as augmentation(h) composed with a
/// trivial-pullback map. Every member is re-validated and the list is
/// checked to be closed under composition. Sorted by image table.
std::vector<MonoidMap> enumerate_monoid_automorphisms(
    const PowerContext& ctx, const SearchBudget& budget = {},
    int group_order_bound = kDefaultGroupOrderBound);

/// Independent oracle: filter all permutations of the carrier fixing {0}.
/// Only feasible for carriers of size <= 8.
std::vector<MonoidMap> naive_enumerate(const PowerContext& ctx);

}  // namespace powmon
