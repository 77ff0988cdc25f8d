#include <doctest.h>

#include "support.hpp"

#include "ccl/io.hpp"

using namespace ccl;
using support::q;

TEST_CASE("interval JSON layout") {
    const IntervalResult r{q("8/25"), q("2/5"), Method::vertex_product, 0};
    const auto j = io::to_json(r);
    CHECK(j.dump() ==
          R"({"lower":"8/25","upper":"2/5","lower_dec":0.32,"upper_dec":0.4,"method":"vertex_product","epsilon":"0/1"})");
    CHECK(to_string(Method::psat_bisect) == "psat_bisect");
    CHECK(to_string(Method::outer_bound) == "outer_bound");
    CHECK(to_string(Method::lp) == "lp");
}

TEST_CASE("validation JSON") {
    const auto report = validate_theory(parse_theory("choicespace { alternative { r: 0.1, nr: 0.8 } }"));
    const auto j = io::to_json(report);
    CHECK(j["valid"] == false);
    CHECK(j["violations"][0]["kind"] == "mass_sum");
    CHECK(io::render_table(validate_theory(support::load("friends.ccl"))) == "valid\n");
}

TEST_CASE("world dump mirrors the classes") {
    const auto ws = WorldSpace::build(support::load("friends.ccl"));
    const auto j = io::to_json(ws);
    CHECK(j["worlds"].size() == 8);
    CHECK(j["worlds"][7]["true_atoms"].dump() == R"(["h","nw","nr","nc"])");
    CHECK(j["spaces"][0]["classes"][3]["worlds"].dump() == "[7,8]");
    const std::string table = io::render_table(ws);
    CHECK(table.find("w8  choice {nw, nr, nc}  true {h, nw, nr, nc}") != std::string::npos);
}

TEST_CASE("ranking report JSON is deterministic") {
    const auto data = ranking::parse_rankings(io::read_file(support::data_path("sample.rankings")));
    const auto a = io::to_json(ranking::evaluate(data)).dump();
    const auto b = io::to_json(ranking::evaluate(data)).dump();
    CHECK(a == b);
    const auto j = io::Json::parse(a);
    CHECK(j["counts"].dump() == "[[8,6,4],[5,4,9],[5,8,5]]");
    CHECK(j["N"] == 18);
    CHECK(j["pairs"][0]["pair"].dump() == R"(["a","b"])");
    for (const char* key : {"interval", "ccl_verdict", "icl_value", "icl_verdict", "truth"})
        CHECK(j["pairs"][0].contains(key));
    for (const char* key : {"determinacy_rate", "icl_acc_determinate", "icl_acc_indeterminate"}) CHECK(j.contains(key));
}

TEST_CASE("missing files") { CHECK_THROWS_AS(io::read_file("/nonexistent/x.ccl"), io::IoError); }
