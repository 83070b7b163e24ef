#include "powmon/report_io.hpp"

#include <bit>
#include <sstream>

namespace powmon {

Json json_of_subset(Mask m) {
    Json out = Json::array();
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1) out.push_back(i);
    return out;
}

Json json_of_check(const CheckResult& c) {
    Json out;
    out["name"] = c.name;
    out["status"] = to_string(c.status);
    if (c.status == CheckStatus::fail) out["witness"] = c.witness;
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

Json json_of_report(const VerificationReport& rep) {
    Json out;
    out["group"] = rep.group;
    out["aut_g_order"] = rep.aut_g_order;
    out["aut_p0g_order"] = rep.aut_p0g_order;
    out["exceptional"] = rep.exceptional;
    Json checks = Json::array();
    for (const CheckResult& c : rep.checks) checks.push_back(json_of_check(c));
    out["checks"] = std::move(checks);
    return out;
}

Json json_of_meta(const ReportMeta& meta) {
    Json out;
    out["elapsed_ms"] = meta.elapsed_ms;
    out["budget"] = meta.budget;
    out["parallelism"] = meta.parallelism;
    if (meta.raw_group) out["raw_group"] = *meta.raw_group;
    return out;
}

std::string render_map_listing(const PowerContext& ctx, const MonoidMap& f) {
    std::ostringstream out;
    for (std::uint64_t i = 0; i < ctx.carrier_size(); ++i)
        out << "  " << format_subset(PowerContext::mask_of(static_cast<CarrierIndex>(i)))
            << " -> " << format_subset(PowerContext::mask_of(f.image[i])) << "\n";
    return out.str();
}

std::string render_text_report(const VerificationReport& rep) {
    std::ostringstream out;
    out << "group [" << format_group(rep.group) << "]  |Aut(G)| = " << rep.aut_g_order
        << "  |Aut(P0(G))| = " << rep.aut_p0g_order
        << (rep.exceptional ? "  (exceptional)" : "") << "\n";
    for (const CheckResult& c : rep.checks) {
        std::string name = c.name + " ";
        out << "  " << name;
        for (std::size_t k = name.size(); k < 36; ++k) out << '.';
        out << ' ' << to_string(c.status);
        if (!c.note.empty()) out << "  [" << c.note << "]";
        out << "\n";
        if (c.status == CheckStatus::fail) out << "    witness: " << c.witness << "\n";
    }
    return out.str();
}

std::string render_csv_checks(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << "group,check,status,witness,note\n";
    for (const VerificationReport& rep : reports)
        for (const CheckResult& c : rep.checks)
            out << csv_quote(format_group(rep.group)) << ',' << c.name << ','
                << to_string(c.status) << ',' << csv_quote(c.witness) << ','
                << csv_quote(c.note) << "\n";
    return out.str();
}

std::string render_carrier_csv(const PowerContext& ctx) {
    std::ostringstream out;
    out << "index,size,elements\n";
    for (std::uint64_t i = 0; i < ctx.carrier_size(); ++i) {
        Mask m = PowerContext::mask_of(static_cast<CarrierIndex>(i));
        out << i << ',' << std::popcount(m) << ',';
        bool first = true;
        for (int e = 0; e < 32; ++e)
            if (m >> e & 1) {
                if (!first) out << ' ';
                out << e;
                first = false;
            }
        out << "\n";
    }
    return out.str();
}

std::string render_cayley_csv(const CayleyTable& table) {
    std::ostringstream out;
    for (std::uint32_t i = 0; i < table.size; ++i) {
        for (std::uint32_t j = 0; j < table.size; ++j) {
            if (j) out << ',';
            out << table.at(i, j);
        }
        out << "\n";
    }
    return out.str();
}

std::string csv_quote(const std::string& field) {
    bool needs = field.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_group(const std::vector<int>& factors) {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(factors[i]);
    }
    return out;
}

}  // namespace powmon
