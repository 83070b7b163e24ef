#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "powmon/report_io.hpp"

namespace {

using namespace powmon;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct CommonOptions {
    std::string format = "text";
    std::string out_path;
    std::uint64_t budget = SearchBudget{}.max_nodes;
    int parallelism = 1;
    bool raw = false;
};

std::vector<int> parse_factor_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string token = text.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            int value = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(value);
        } catch (const std::exception&) {
            throw contract_error("cannot parse group factor '" + token + "'");
        }
        pos = comma + 1;
    }
    if (out.empty()) throw contract_error("empty group literal");
    return out;
}

void emit(const CommonOptions& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + opts.out_path);
    file << payload;
}

std::string meta_comment(const ReportMeta& meta) {
    std::ostringstream out;
    out << "# meta elapsed_ms=" << meta.elapsed_ms << " budget=" << meta.budget
        << " parallelism=" << meta.parallelism;
    if (meta.raw_group) out << " raw_group=" << format_group(*meta.raw_group);
    out << "\n";
    return out.str();
}

ReportMeta make_meta(const CommonOptions& opts, double elapsed_ms,
                     const std::vector<int>* raw_factors) {
    ReportMeta meta;
    meta.elapsed_ms = elapsed_ms;
    meta.budget = opts.budget;
    meta.parallelism = opts.parallelism;
    if (opts.raw && raw_factors) meta.raw_group = *raw_factors;
    return meta;
}

class Stopwatch {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int exit_code_for(const std::vector<VerificationReport>& reports, bool strict) {
    bool any_fail = false;
    bool any_skip = false;
    for (const VerificationReport& rep : reports) {
        if (!rep.all_passed()) any_fail = true;
        if (rep.any_skipped()) any_skip = true;
    }
    if (any_fail) return kExitCheckFailure;
    if (strict && any_skip) return kExitResource;
    return kExitPass;
}

int cmd_aut(const CommonOptions& opts, const std::string& group_str, bool emit_maps) {
    Stopwatch clock;
    std::vector<int> raw = parse_factor_list(group_str);
    GroupSpec g = make_group(raw);
    PowerContext ctx(g);
    std::vector<GroupAutMap> group_autos = enumerate_group_automorphisms(g);
    std::vector<MonoidMap> autos = enumerate_monoid_automorphisms(ctx, SearchBudget{opts.budget});
    bool exceptional = g.invariant_factors == std::vector<int>{2, 2};
    ReportMeta meta = make_meta(opts, clock.ms(), &raw);

    std::ostringstream out;
    if (opts.format == "json") {
        Json doc;
        doc["command"] = "aut";
        doc["group"] = g.invariant_factors;
        doc["aut_g_order"] = group_autos.size();
        doc["aut_p0g_order"] = autos.size();
        doc["exceptional"] = exceptional;
        if (emit_maps) {
            Json maps = Json::array();
            for (const MonoidMap& f : autos) maps.push_back(f.image);
            doc["maps"] = std::move(maps);
        }
        doc["meta"] = json_of_meta(meta);
        out << doc.dump(2) << "\n";
    } else if (opts.format == "csv") {
        out << "group,aut_g_order,aut_p0g_order,exceptional\n"
            << csv_quote(format_group(g.invariant_factors)) << ',' << group_autos.size() << ','
            << autos.size() << ',' << (exceptional ? "true" : "false") << "\n";
        if (emit_maps)
            for (std::size_t i = 0; i < autos.size(); ++i) {
                out << "map," << i << ',';
                for (std::size_t k = 0; k < autos[i].image.size(); ++k)
                    out << (k ? " " : "") << autos[i].image[k];
                out << "\n";
            }
        out << meta_comment(meta);
    } else {
        out << "group: [" << format_group(g.invariant_factors) << "]\n"
            << "|Aut(G)| = " << group_autos.size() << "\n"
            << "|Aut(P0(G))| = " << autos.size() << "\n"
            << "exceptional: " << (exceptional ? "yes" : "no") << "\n";
        if (emit_maps)
            for (std::size_t i = 0; i < autos.size(); ++i)
                out << "map " << i << ":\n" << render_map_listing(ctx, autos[i]);
        out << meta_comment(meta);
    }
    emit(opts, out.str());
    return kExitPass;
}

std::vector<VerificationReport> run_reports(const std::vector<std::vector<int>>& groups,
                                            const CommonOptions& opts) {
    std::vector<VerificationReport> reports(groups.size());
    int workers = std::max(1, opts.parallelism);
    if (workers == 1) {
        for (std::size_t i = 0; i < groups.size(); ++i)
            reports[i] = verify_group(make_group(groups[i]), SearchBudget{opts.budget});
        return reports;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= groups.size()) return;
                reports[i] = verify_group(make_group(groups[i]), SearchBudget{opts.budget});
            }
        });
    for (std::thread& t : pool) t.join();
    return reports;
}

int cmd_verify(const CommonOptions& opts, int max_order, bool strict) {
    Stopwatch clock;
    std::vector<std::vector<int>> groups = abelian_groups_up_to(max_order);
    std::vector<VerificationReport> reports = run_reports(groups, opts);
    ReportMeta meta = make_meta(opts, clock.ms(), nullptr);

    bool all_pass = true;
    for (const VerificationReport& rep : reports) all_pass = all_pass && rep.all_passed();

    std::ostringstream out;
    if (opts.format == "json") {
        Json doc;
        doc["command"] = "verify";
        doc["max_order"] = max_order;
        doc["all_pass"] = all_pass;
        Json arr = Json::array();
        for (const VerificationReport& rep : reports) arr.push_back(json_of_report(rep));
        doc["reports"] = std::move(arr);
        doc["meta"] = json_of_meta(meta);
        out << doc.dump(2) << "\n";
    } else if (opts.format == "csv") {
        out << render_csv_checks(reports) << meta_comment(meta);
    } else {
        for (const VerificationReport& rep : reports) out << render_text_report(rep);
        out << (all_pass ? "all groups pass\n" : "FAILURES PRESENT\n") << meta_comment(meta);
    }
    emit(opts, out.str());
    return exit_code_for(reports, strict);
}

int cmd_lemmas(const CommonOptions& opts, const std::string& group_str, bool strict) {
    Stopwatch clock;
    std::vector<int> raw = parse_factor_list(group_str);
    VerificationReport rep = verify_group(make_group(raw), SearchBudget{opts.budget});
    ReportMeta meta = make_meta(opts, clock.ms(), &raw);

    std::ostringstream out;
    if (opts.format == "json") {
        Json doc;
        doc["command"] = "lemmas";
        doc["report"] = json_of_report(rep);
        doc["meta"] = json_of_meta(meta);
        out << doc.dump(2) << "\n";
    } else if (opts.format == "csv") {
        out << render_csv_checks({rep}) << meta_comment(meta);
    } else {
        out << render_text_report(rep) << meta_comment(meta);
    }
    emit(opts, out.str());
    return exit_code_for({rep}, strict);
}

int cmd_table(const CommonOptions& opts, const std::string& group_str) {
    Stopwatch clock;
    std::vector<int> raw = parse_factor_list(group_str);
    GroupSpec g = make_group(raw);
    PowerContext ctx(g);
    CayleyTable table = cayley_table(ctx, opts.parallelism);
    ReportMeta meta = make_meta(opts, clock.ms(), &raw);

    std::ostringstream out;
    if (opts.format == "json") {
        Json doc;
        doc["command"] = "table";
        doc["group"] = g.invariant_factors;
        Json carrier = Json::array();
        for (std::uint64_t i = 0; i < ctx.carrier_size(); ++i)
            carrier.push_back(json_of_subset(PowerContext::mask_of(static_cast<CarrierIndex>(i))));
        doc["carrier"] = std::move(carrier);
        Json rows = Json::array();
        for (std::uint32_t i = 0; i < table.size; ++i) {
            Json row = Json::array();
            for (std::uint32_t j = 0; j < table.size; ++j) row.push_back(table.at(i, j));
            rows.push_back(std::move(row));
        }
        doc["table"] = std::move(rows);
        doc["meta"] = json_of_meta(meta);
        out << doc.dump(2) << "\n";
    } else if (opts.format == "csv") {
        out << render_carrier_csv(ctx) << "\n" << render_cayley_csv(table) << meta_comment(meta);
    } else {
        out << "carrier of P0([" << format_group(g.invariant_factors) << "]):\n";
        for (std::uint64_t i = 0; i < ctx.carrier_size(); ++i)
            out << "  " << i << ": "
                << format_subset(PowerContext::mask_of(static_cast<CarrierIndex>(i))) << "\n";
        out << "sumset table (carrier indices):\n" << render_cayley_csv(table) << meta_comment(meta);
    }
    emit(opts, out.str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduced power monoid of a finite abelian group: automorphisms and checks"};
    app.require_subcommand(1);

    CommonOptions opts;
    if (const char* env = std::getenv("POWMON_BUDGET")) {
        try {
            opts.budget = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "invalid POWMON_BUDGET value\n";
            return kExitUsage;
        }
    }

    std::string group_str;
    int max_order = 0;
    bool emit_maps = false;
    bool strict = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", opts.out_path, "write the report to this file");
        sub->add_option("--budget", opts.budget, "search work budget in nodes");
        sub->add_option("--parallelism", opts.parallelism, "worker thread cap")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--raw", opts.raw, "echo the unnormalized factor list in the metadata");
    };

    CLI::App* aut = app.add_subcommand("aut", "count (and list) the automorphisms");
    aut->add_option("--group", group_str, "comma-separated invariant factors")->required();
    aut->add_flag("--emit-maps", emit_maps, "include every automorphism in the output");
    add_common(aut);

    CLI::App* verify = app.add_subcommand("verify", "verify all groups up to an order");
    verify->add_option("--max-order", max_order, "largest group order to cover")
        ->required()
        ->check(CLI::PositiveNumber);
    verify->add_flag("--strict", strict, "treat skipped checks as a resource failure");
    add_common(verify);

    CLI::App* lemmas = app.add_subcommand("lemmas", "run every statement check on one group");
    lemmas->add_option("--group", group_str, "comma-separated invariant factors")->required();
    lemmas->add_flag("--strict", strict, "treat skipped checks as a resource failure");
    add_common(lemmas);

    CLI::App* table = app.add_subcommand("table", "export the carrier and its sumset table");
    table->add_option("--group", group_str, "comma-separated invariant factors")->required();
    add_common(table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (aut->parsed()) return cmd_aut(opts, group_str, emit_maps);
        if (verify->parsed()) return cmd_verify(opts, max_order, strict);
        if (lemmas->parsed()) return cmd_lemmas(opts, group_str, strict);
        if (table->parsed()) return cmd_table(opts, group_str);
    } catch (const contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
