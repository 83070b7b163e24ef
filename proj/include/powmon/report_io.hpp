#pragma once

#include <json.hpp>

#include "powmon/harness.hpp"

namespace powmon {

/// Insertion-ordered JSON keeps every serialization byte-stable.
using Json = nlohmann::ordered_json;

/// Run metadata lives outside the data sections; it is the only part of an
/// output that may differ between identical runs.
struct ReportMeta {
    double elapsed_ms = 0.0;
    std::uint64_t budget = SearchBudget{}.max_nodes;
    int parallelism = 1;
    std::optional<std::vector<int>> raw_group;
};

Json json_of_subset(Mask m);  // sorted element list, e.g. [0,2]
Json json_of_check(const CheckResult& c);
Json json_of_report(const VerificationReport& rep);
Json json_of_meta(const ReportMeta& meta);

/// One "{0,1} -> {0,3}" line per carrier subset.
std::string render_map_listing(const PowerContext& ctx, const MonoidMap& f);

std::string render_text_report(const VerificationReport& rep);
std::string render_csv_checks(const std::vector<VerificationReport>& reports);

std::string render_carrier_csv(const PowerContext& ctx);
std::string render_cayley_csv(const CayleyTable& table);

std::string csv_quote(const std::string& field);
std::string format_group(const std::vector<int>& factors);  // "2,4"

}  // namespace powmon
