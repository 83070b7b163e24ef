#pragma once

#include <string>
#include <vector>

#include "powmon/automorphism.hpp"

namespace powmon {

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);

/// One statement checked against one map (or against the structure itself).
/// A witness is attached exactly when the check fails.
struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string witness;
    std::string note;
    double elapsed_ms = 0.0;
};

struct VerificationReport {
    std::vector<int> group;
    std::vector<CheckResult> checks;
    std::uint64_t aut_g_order = 0;
    std::uint64_t aut_p0g_order = 0;
    bool exceptional = false;  // invariant factors are exactly [2,2]

    bool all_passed() const;
    bool any_skipped() const;
};

/// Subgroups of the context group, by carrier-mask scan (works with or
/// without an attached GroupSpec).
std::vector<Subgroup> carrier_subgroups(const PowerContext& ctx);

/// Every subgroup keeps its size and stays a subgroup under f.
CheckResult check_subgroup_preservation(const PowerContext& ctx, const MonoidMap& f);

/// The pullback exists, is a group automorphism, preserves element orders,
/// commutes with integer multiples, and gives the pointwise subgroup images.
CheckResult check_pullback_laws(const PowerContext& ctx, const MonoidMap& f);

/// Restriction, quotient projection and punctured-set behaviour of the
/// trivial-pullback normalization of f: the map fixes each subgroup and
/// restricts to a trivial-pullback automorphism downstairs; it stabilizes
/// each divisible family and induces a trivial-pullback automorphism on the
/// quotient (the projection itself is checked to be an isomorphism); and it
/// maps punctured sets to punctured sets, fixing them whenever the removed
/// element has order at least 3.
CheckResult check_substructure_laws(const PowerContext& ctx, const MonoidMap& f);

/// Condition check: the normalization of f restricts to the identity on the
/// power monoid of every proper subgroup.
CheckResult check_identity_on_proper_submonoids(const PowerContext& ctx, const MonoidMap& f);

/// Condition check: the normalization of f induces the identity on G/K for
/// every prime-order subgroup K.
CheckResult check_identity_on_prime_quotients(const PowerContext& ctx, const MonoidMap& f);

/// When both condition checks hold and the group is not the Klein
/// four-group, the normalization must be the identity.
CheckResult check_locality_implies_identity(const PowerContext& ctx, const MonoidMap& f);

/// The Klein four-group case: the automorphisms are exactly the
/// cardinality-preserving bijections, there are 36 of them, and they split
/// as independent permutation groups on the 2-element and 3-element sets.
CheckResult verify_klein_exception(const PowerContext& ctx, const SearchBudget& budget = {});

/// Full verification of one group: enumerates everything, checks the
/// headline count, and runs every statement check against every enumerated
/// automorphism. Resource exhaustion turns into skipped checks, not errors.
VerificationReport verify_group(const GroupSpec& g, const SearchBudget& budget = {},
                                int group_order_bound = kDefaultGroupOrderBound);

/// Invariant-factor chains of every abelian group of order <= max_order
/// (including the trivial group), ascending by order then chain.
std::vector<std::vector<int>> abelian_groups_up_to(int max_order);

}  // namespace powmon
