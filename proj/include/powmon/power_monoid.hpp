#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "powmon/group.hpp"

namespace powmon {

/// Position of a zero-containing subset in the carrier ordering. The carrier
/// lists all 2^(|G|-1) subsets with bit 0 set, ascending by mask, so
/// index = mask >> 1.
using CarrierIndex = std::uint32_t;

/// Hard cap on |G| for any carrier work: beyond this even iterating the
/// carrier is out of reach.
inline constexpr int kMaxCarrierGroupOrder = 21;

/// Cap on |G| for materializing the full sumset table.
inline constexpr int kMaxCayleyGroupOrder = 12;

/// Precomputed tables for one group: the addition table doubles as a family
/// of translation permutations, which makes a sumset a union of translated
/// masks. Immutable after construction.
class PowerContext {
  public:
    /// Context over a GroupSpec (the usual entry point).
    explicit PowerContext(const GroupSpec& g);

    /// Context over a bare addition table (quotients, subgroups). The table
    /// must describe an abelian group with identity 0.
    PowerContext(int order, std::vector<int> add_table);

    int order() const { return order_; }
    std::uint64_t carrier_size() const { return std::uint64_t{1} << (order_ - 1); }

    /// The GroupSpec this context was built from, if any.
    const std::optional<GroupSpec>& group() const { return group_; }

    ElementIndex add(ElementIndex a, ElementIndex b) const {
        return static_cast<ElementIndex>(table_[static_cast<std::size_t>(a) * order_ + b]);
    }
    ElementIndex negate(ElementIndex a) const { return negate_[a]; }
    int element_order(ElementIndex a) const { return element_order_[a]; }

    /// { x + y : y in m }
    Mask translate(Mask m, ElementIndex x) const {
        Mask out = 0;
        const int* row = table_.data() + static_cast<std::size_t>(x) * order_;
        while (m) {
            int y = std::countr_zero(m);
            m &= m - 1;
            out |= Mask{1} << row[y];
        }
        return out;
    }

    Mask full_mask() const {
        return order_ == 32 ? ~Mask{0} : (Mask{1} << order_) - 1;
    }

    static Mask mask_of(CarrierIndex i) { return (Mask{i} << 1) | 1; }
    static CarrierIndex index_of(Mask m) { return static_cast<CarrierIndex>(m >> 1); }

  private:
    void init();

    int order_;
    std::vector<int> table_;
    std::vector<ElementIndex> negate_;
    std::vector<int> element_order_;
    std::optional<GroupSpec> group_;
};

/// Setwise sum {x+y : x in X, y in Y}, as the union of Y translated by each
/// member of X.
Mask sumset(const PowerContext& ctx, Mask x, Mask y);

/// X + ... + X with n copies, n >= 1 (binary doubling inside). n = 0 is a
/// contract violation: the n-fold sum starts at one copy.
Mask n_fold_sum(const PowerContext& ctx, Mask x, int n);

struct StabilizationResult {
    int index = 1;   // least n >= 1 with nX = (n+1)X
    Mask limit = 1;  // the stable set nX
    bool operator==(const StabilizationResult& o) const {
        return index == o.index && limit == o.limit;
    }
};

/// Iterates X, 2X, 3X, ... until the chain stops growing.
StabilizationResult stabilization_index(const PowerContext& ctx, Mask x);

/// Some witness Z with X + Z = Y, or nullopt. Witnesses are searched among
/// zero-containing subsets of Y in ascending (popcount, mask) order, so the
/// result is deterministic and small.
std::optional<Mask> divides(const PowerContext& ctx, Mask x, Mask y);

/// X + X == X.
bool is_idempotent(const PowerContext& ctx, Mask x);

/// Membership/closure check, independent of sumset: contains 0, closed
/// under addition and negation.
bool is_subgroup_set(const PowerContext& ctx, Mask x);

/// G minus one nonzero element a.
Mask punctured(const PowerContext& ctx, ElementIndex a);

/// All X divisible by H, i.e. the unions of H-cosets containing H,
/// ascending by mask.
std::vector<Mask> divisible_by_subgroup_family(const PowerContext& ctx, const Subgroup& h);

/// {a + H : a in X} as a mask over coset numbers.
Mask quotient_project(const QuotientGroup& q, Mask x);

/// Union of the cosets named by a quotient-side mask (the inverse of
/// quotient_project on the divisible family).
Mask quotient_lift(const QuotientGroup& q, Mask cosets);

/// All carrier masks in ascending order. Bounded by kMaxCarrierGroupOrder at
/// context construction, so this is always materializable.
std::vector<Mask> enumerate_carrier(const PowerContext& ctx);

/// Full sumset table over carrier indices.
struct CayleyTable {
    std::uint32_t size = 0;
    std::vector<CarrierIndex> cells;  // size*size, row-major

    CarrierIndex at(CarrierIndex i, CarrierIndex j) const {
        return cells[static_cast<std::size_t>(i) * size + j];
    }
};

/// Materializes the table; rows may be computed in parallel. Throws
/// resource_error when |G| > kMaxCayleyGroupOrder.
CayleyTable cayley_table(const PowerContext& ctx, int parallelism = 1);

/// Context for the power monoid of the subgroup h, plus the element
/// relabeling (position k in the sub-context is element sub_elements[k]).
struct SubgroupContext {
    PowerContext context;
    std::vector<ElementIndex> sub_elements;
};

SubgroupContext make_subgroup_context(const PowerContext& ctx, const Subgroup& h);

/// Compress a parent mask supported on h into a sub-context mask.
Mask restrict_mask(const SubgroupContext& sub, Mask parent_mask);

/// Expand a sub-context mask back into the parent.
Mask extend_mask(const SubgroupContext& sub, Mask sub_mask);

/// Quotient group + context for the power monoid of G/H.
struct QuotientContext {
    QuotientGroup quotient;
    PowerContext context;
};

QuotientContext make_quotient_context(const PowerContext& ctx, const Subgroup& h);

/// "{0,2,3}" rendering of a subset mask.
std::string format_subset(Mask m);

}  // namespace powmon
