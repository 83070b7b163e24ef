#pragma once

#include <cstdint>
#include <vector>

#include "powmon/errors.hpp"

namespace powmon {

/// Element of a finite abelian group, identified by its mixed-radix index.
/// The first invariant factor is the least significant digit, so element 0
/// always has index 0 and masks built over indices are reproducible.
using ElementIndex = std::uint32_t;

/// Subset of a group with order <= 21, one bit per element index.
using Mask = std::uint32_t;

/// Default cap on |G| for the enumeration routines. Carrier sizes grow as
/// 2^(|G|-1), so anything much larger is out of desk range anyway.
inline constexpr int kDefaultGroupOrderBound = 12;

/// A finite abelian group C_{n_1} + ... + C_{n_r} in invariant-factor form:
/// every factor is >= 2 and divides the next. The empty list is the trivial
/// group.
struct GroupSpec {
    std::vector<int> invariant_factors;
    int order = 1;

    int rank() const { return static_cast<int>(invariant_factors.size()); }

    bool operator==(const GroupSpec& other) const {
        return invariant_factors == other.invariant_factors;
    }
};

/// Coordinates of an element together with its index. The two views are
/// related by the mixed-radix rule fixed above.
struct GroupElement {
    std::vector<int> coords;
    ElementIndex index = 0;
};

/// A subgroup as a member bitmask. Bit 0 is always set and the mask is
/// closed under addition and negation.
struct Subgroup {
    Mask members = 1;
    int order = 1;

    bool operator==(const Subgroup& other) const { return members == other.members; }
    bool operator<(const Subgroup& other) const {
        if (order != other.order) return order < other.order;
        return members < other.members;
    }
};

/// An automorphism of G as an element-to-element image table.
struct GroupAutMap {
    std::vector<ElementIndex> image;

    bool is_identity() const {
        for (std::size_t i = 0; i < image.size(); ++i)
            if (image[i] != i) return false;
        return true;
    }
    bool operator==(const GroupAutMap& other) const { return image == other.image; }
};

/// G/H presented by a coset table. Coset 0 is the coset of 0 and coset
/// numbers follow the smallest representative.
struct QuotientGroup {
    GroupSpec parent;
    Subgroup modulus;
    std::vector<ElementIndex> coset_reps;
    std::vector<int> coset_of;   // element index -> coset number
    std::vector<int> table;      // order*order, row-major
    int order = 1;

    int at(int a, int b) const { return table[static_cast<std::size_t>(a) * order + b]; }
};

/// Builds the canonical GroupSpec for an arbitrary factor list. Lists that
/// are not already an invariant-factor chain are regrouped prime by prime
/// and recombined, so make_group({2,3}) == make_group({6}).
/// Throws contract_error on any factor < 2.
GroupSpec make_group(const std::vector<int>& factors);

GroupElement element_from_index(const GroupSpec& g, ElementIndex index);
GroupElement element_from_coords(const GroupSpec& g, const std::vector<int>& coords);

ElementIndex add(const GroupSpec& g, ElementIndex a, ElementIndex b);
ElementIndex negate(const GroupSpec& g, ElementIndex a);

/// Least n >= 1 with n*a = 0.
int element_order(const GroupSpec& g, ElementIndex a);

/// Closure of gens (plus 0) under addition.
Subgroup subgroup_generated(const GroupSpec& g, const std::vector<ElementIndex>& gens);

/// True when mask contains 0 and is closed under addition and negation.
bool is_subgroup_mask(const GroupSpec& g, Mask mask);

/// All subgroups of G, each once, sorted by (order, mask). Throws
/// resource_error when g.order exceeds order_bound.
std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g,
                                          int order_bound = kDefaultGroupOrderBound);

/// Coset table of G/H. Throws invariant_error when h is not a subgroup.
QuotientGroup quotient(const GroupSpec& g, const Subgroup& h);

/// Canonical invariant factors recovered from the order profile (count the
/// elements killed by each prime power, prime by prime).
std::vector<int> classify_invariant_factors(const GroupSpec& g);
std::vector<int> classify_invariant_factors(const QuotientGroup& q);

/// Same, for an arbitrary addition table; validates that the table is an
/// abelian group (throws invariant_error otherwise).
std::vector<int> classify_table_group(int order, const std::vector<int>& table);

/// Throws invariant_error unless table is a well-formed abelian group table
/// with identity 0.
void validate_abelian_group_table(int order, const std::vector<int>& table);

bool is_group_automorphism(const GroupSpec& g, const GroupAutMap& m);

GroupAutMap compose(const GroupSpec& g, const GroupAutMap& f1, const GroupAutMap& f2);
GroupAutMap invert(const GroupSpec& g, const GroupAutMap& f);

/// All automorphisms of G, deduplicated and sorted by image table. Found by
/// assigning images to the canonical basis elements among order-compatible
/// candidates and keeping the bijective outcomes. Throws resource_error when
/// g.order exceeds order_bound.
std::vector<GroupAutMap> enumerate_group_automorphisms(
    const GroupSpec& g, int order_bound = kDefaultGroupOrderBound);

}  // namespace powmon
