#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ccl/errors.hpp"
#include "ccl/inference.hpp"
#include "ccl/io.hpp"
#include "ccl/psat.hpp"
#include "ccl/ranking.hpp"
#include "ccl/theory.hpp"
#include "ccl/worlds.hpp"

namespace {

using ccl::io::Json;

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_input = 2;

struct Common {
    std::string path;
    std::string format = "json";
};

void emit(const Common& common, const Json& json, const std::string& table) {
    if (common.format == "table")
        std::cout << table;
    else
        std::cout << json.dump(2) << "\n";
}

ccl::Theory load_theory(const std::string& path) { return ccl::parse_theory(ccl::io::read_file(path)); }

std::vector<ccl::Query> queries_for(const ccl::Theory& theory, const std::vector<std::string>& texts) {
    if (!texts.empty()) {
        std::vector<ccl::Query> out;
        for (const auto& text : texts) out.push_back(ccl::parse_query(text));
        return out;
    }
    if (theory.queries.empty()) throw std::invalid_argument("no --query given and the theory declares none");
    return theory.queries;
}

int cmd_validate(const Common& common) {
    const ccl::ValidationReport report = ccl::validate_theory(load_theory(common.path));
    emit(common, ccl::io::to_json(report), ccl::io::render_table(report));
    return report.ok() ? exit_ok : exit_domain;
}

int cmd_worlds(const Common& common) {
    const auto ws = ccl::WorldSpace::build(load_theory(common.path));
    emit(common, ccl::io::to_json(ws), ccl::io::render_table(ws));
    return exit_ok;
}

int cmd_infer(const Common& common, const std::vector<std::string>& query_text, const std::string& method,
              const std::string& epsilon_text) {
    const ccl::Theory theory = load_theory(common.path);
    const ccl::Rational epsilon = ccl::parse_rational(epsilon_text);
    Json results = Json::array();
    std::string table;
    for (const ccl::Query& q : queries_for(theory, query_text)) {
        Json j;
        ccl::IntervalResult interval;
        if (method == "psat") {
            const auto bisection = ccl::bisect_bounds(theory, q, epsilon);
            interval = bisection.interval;
            j = ccl::io::to_json(bisection);
        } else {
            if (method == "lp")
                interval = ccl::credal_bounds_single_space(theory, q);
            else if (method == "vertex")
                interval = ccl::credal_bounds_strong_extension(theory, q);
            else
                interval = ccl::outer_bound(theory, q);
            j = ccl::io::to_json(interval);
        }
        Json entry{{"query", ccl::to_string(q)}};
        entry.update(j);
        results.push_back(entry);
        table += "query   " + ccl::to_string(q) + "\n" + ccl::io::render_table(interval);
    }
    emit(common, results.size() == 1 ? results.front() : results, table);
    return exit_ok;
}

int cmd_psat_export(const Common& common, const std::vector<std::string>& query_text, const std::string& alpha_text,
                    bool dimacs) {
    const ccl::Theory theory = load_theory(common.path);
    const auto queries = queries_for(theory, query_text);
    const auto instance = ccl::build_psat_instance(theory, queries.front(), ccl::parse_rational(alpha_text));
    std::cout << (dimacs ? ccl::export_dimacs(instance.assessments.front().formula) : ccl::export_instance(instance));
    return exit_ok;
}

int cmd_rank(const Common& common, const ccl::ranking::EvaluationOptions& options) {
    const std::string text = ccl::io::read_file(common.path);
    const bool counts_input = common.path.ends_with(".csv");
    const auto report = counts_input ? ccl::ranking::evaluate(ccl::ranking::parse_counts(text), options)
                                     : ccl::ranking::evaluate(ccl::ranking::parse_rankings(text), options);
    emit(common, ccl::io::to_json(report), ccl::io::render_table(report));
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Credal choice logic inference engine"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", common.path, "Theory (.ccl), rankings, or counts (.csv) file")->required();
        sub->add_option("--format", common.format, "Output format")
            ->check(CLI::IsMember({"json", "table"}))
            ->capture_default_str();
    };

    auto* validate = app.add_subcommand("validate", "Check the theory invariants");
    add_common(validate);

    auto* worlds = app.add_subcommand("worlds", "Dump the possible worlds and their classes");
    add_common(worlds);

    std::vector<std::string> query_text;
    std::string method = "vertex", epsilon_text = "1/1024", alpha_text = "1/2";
    auto* infer = app.add_subcommand("infer", "Lower and upper probability of a query");
    add_common(infer);
    infer->add_option("-q,--query", query_text, "Query literals, e.g. 'h' or '\\+a1g, \\+a2r'; repeatable");
    infer->add_option("-m,--method", method, "Inference method")
        ->check(CLI::IsMember({"lp", "vertex", "outer", "psat"}))
        ->capture_default_str();
    infer->add_option("--epsilon", epsilon_text, "Bisection tolerance (psat)")->capture_default_str();

    bool dimacs = false;
    auto* psat_export = app.add_subcommand("psat-export", "Write the PSAT instance for one query");
    add_common(psat_export);
    psat_export->add_option("-q,--query", query_text, "Query literals")->expected(1);
    psat_export->add_option("--alpha", alpha_text, "Query probability to assess")->capture_default_str();
    psat_export->add_flag("--dimacs", dimacs, "Emit the probability-1 formula as DIMACS CNF");

    ccl::ranking::EvaluationOptions rank_options;
    std::string threshold_text = "1/2", backend = "lp", holdout_text = "0";
    auto* rank = app.add_subcommand("rank", "Pairwise preferences from rankings or a counts CSV");
    add_common(rank);
    rank->add_option("--threshold", threshold_text, "Decision threshold")->capture_default_str();
    rank->add_option("--backend", backend, "Bounds backend")
        ->check(CLI::IsMember({"lp", "psat"}))
        ->capture_default_str();
    rank->add_option("--epsilon", epsilon_text, "Bisection tolerance (psat backend)")->capture_default_str();
    rank->add_option("--holdout", holdout_text, "Fraction of rankings held out as ground truth")
        ->capture_default_str();
    rank->add_option("--seed", rank_options.seed, "Seed for the holdout split")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (*validate) return cmd_validate(common);
        if (*worlds) return cmd_worlds(common);
        if (*infer) return cmd_infer(common, query_text, method, epsilon_text);
        if (*psat_export) return cmd_psat_export(common, query_text, alpha_text, dimacs);
        if (*rank) {
            rank_options.threshold = ccl::parse_rational(threshold_text);
            rank_options.backend = backend == "psat" ? ccl::ranking::Backend::psat : ccl::ranking::Backend::lp;
            rank_options.epsilon = ccl::parse_rational(epsilon_text);
            rank_options.holdout = ccl::parse_rational(holdout_text);
            return cmd_rank(common, rank_options);
        }
    } catch (const ccl::io::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const ccl::ParseError& e) {
        std::cerr << common.path << ":" << e.what() << "\n";
        return exit_input;
    } catch (const ccl::ranking::FormatError& e) {
        std::cerr << common.path << ": " << e.what() << "\n";
        return exit_input;
    } catch (const ccl::ValidationError& e) {
        std::cerr << "invalid theory:\n" << ccl::io::render_table(e.report());
        return exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_domain;
}
