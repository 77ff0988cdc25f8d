#include <doctest.h>

#include <numeric>

#include "support.hpp"

#include "ccl/ranking.hpp"
#include "ccl/worlds.hpp"

using namespace ccl;
using namespace ccl::ranking;
using support::q;

namespace {

const std::vector<std::vector<std::uint64_t>> sample_counts{{8, 6, 4}, {5, 4, 9}, {5, 8, 5}};

IntervalResult interval(const char* lo, const char* hi) { return {q(lo), q(hi), Method::lp, 0}; }

RankingDataset random_dataset(support::Rng& rng, std::size_t n, std::size_t count) {
    RankingDataset d;
    d.names = support::names("o", n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // A noisy copy of one reference order, so pairs are not all ties.
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<std::size_t> r = perm;
        for (std::size_t s = support::uniform(rng, 0, n); s > 0; --s) {
            const std::size_t i = support::uniform(rng, 0, n - 2);
            std::swap(r[i], r[i + 1]);
        }
        d.rankings.push_back(r);
    }
    return d;
}

} // namespace

TEST_CASE("rankings file to counts") {
    const auto data = parse_rankings(ccl::io::read_file(support::data_path("sample.rankings")));
    CHECK(data.names == std::vector<std::string>{"a", "b", "c"});
    CHECK(data.rankings.size() == 18);
    const auto counts = counts_from_rankings(data);
    CHECK(counts.counts == sample_counts);
    CHECK(counts.total == 18);
    CHECK(counts == parse_counts(ccl::io::read_file(support::data_path("sample-counts.csv"))));
    CHECK(parse_counts(to_csv(counts)) == counts);
}

TEST_CASE("count edge cases and format errors") {
    const auto empty = counts_from_rankings(RankingDataset{{"a", "b"}, {}});
    CHECK(empty.total == 0);
    CHECK(empty.counts == std::vector<std::vector<std::uint64_t>>{{0, 0}, {0, 0}});
    const auto single = counts_from_rankings(parse_rankings("a, b\n"));
    CHECK(single.counts == std::vector<std::vector<std::uint64_t>>{{1, 0}, {0, 1}});
    CHECK_THROWS_AS(parse_rankings("a,b\na,b,c\n"), FormatError);
    CHECK_THROWS_AS(parse_rankings("a,a\n"), FormatError);
    CHECK_THROWS_AS(parse_rankings("a,b xq\n"), FormatError);
    CHECK_THROWS_AS(parse_counts("a,b\n1,0\n0,1\nN=2\n"), FormatError);
    CHECK_THROWS_AS(parse_counts("a,b\n1,0\n0,1\n"), FormatError);
    CHECK(parse_rankings("b,a x2\n# note\n\na,b\n").rankings.size() == 3);
}

TEST_CASE("smoothing") {
    const CountMatrix counts{{"a", "b", "c"}, sample_counts, 18};
    const auto m = smooth_marginals(counts);
    CHECK(m.alpha[0][0] == q("13/30"));
    for (std::size_t i = 0; i < 3; ++i) {
        Rational row = 0, col = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            row += m.alpha[i][j];
            col += m.alpha[j][i];
            CHECK(m.alpha[i][j] > 0);
            CHECK(m.alpha[i][j] < 1);
        }
        CHECK(row == 1);
        CHECK(col == 1);
    }
    const auto uniform = smooth_marginals(CountMatrix{{"a", "b"}, {{0, 0}, {0, 0}}, 0});
    for (const auto& row : uniform.alpha)
        for (const auto& x : row) CHECK(x == q("1/2"));
}

TEST_CASE("ranking theory worlds are permutations") {
    for (std::size_t n : {3u, 4u, 5u}) {
        support::Rng rng(n);
        const auto m = smooth_marginals(counts_from_rankings(random_dataset(rng, n, 10)));
        const Theory t = build_ranking_theory(m);
        CHECK(validate_theory(t).ok());
        CHECK(t.spaces.size() == 1);
        CHECK(t.spaces[0].alternatives.size() == 2 * n);
        std::size_t factorial = 1;
        for (std::size_t k = 2; k <= n; ++k) factorial *= k;
        CHECK(WorldSpace::build(t).worlds().size() == factorial);
    }
}

TEST_CASE("pairwise query clauses and semantics") {
    const Theory base = build_ranking_theory(smooth_marginals(CountMatrix{{"a", "b", "c"}, sample_counts, 18}));
    const auto [t, query] = pairwise_query(base, 0, 1);
    CHECK(t.program.clauses.size() == 3);
    CHECK(to_string(t.program.clauses[0]) == "q :- r1(h1), r2(h2).");
    CHECK(to_string(query) == "q");
    CHECK(validate_theory(t).ok());
    CHECK(to_string(pairwise_query(base, 0, 1, RankConvention::literal).first.program.clauses[0]) ==
          "q :- r2(h1), r1(h2).");
    CHECK_THROWS_AS(pairwise_query(base, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(pairwise_query(base, 0, 3), std::out_of_range);

    // The world where h1 is first and h2 second satisfies q.
    const auto ws = WorldSpace::build(t);
    std::size_t matches = 0;
    for (std::size_t w = 0; w < ws.worlds().size(); ++w) {
        std::set<std::string> image;
        for (AtomId a : ws.worlds()[w].image) image.insert(ws.atom_name(a));
        if (image.contains("r1(h1)") && image.contains("r2(h2)")) {
            ++matches;
            CHECK(ws.satisfies(w, query));
        }
    }
    CHECK(matches == 1);
}

TEST_CASE("exactly one direction holds in every world") {
    for (std::size_t n : {2u, 3u, 4u}) {
        support::Rng rng(100 + n);
        const Theory base = build_ranking_theory(smooth_marginals(counts_from_rankings(random_dataset(rng, n, 6))));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                const auto [ta, qa] = pairwise_query(base, a, b);
                const auto [tb, qb] = pairwise_query(base, b, a);
                const auto wa = WorldSpace::build(ta), wb = WorldSpace::build(tb);
                REQUIRE(wa.worlds().size() == wb.worlds().size());
                for (std::size_t w = 0; w < wa.worlds().size(); ++w)
                    CHECK(wa.satisfies(w, qa) != wb.satisfies(w, qb));
            }
    }
}

TEST_CASE("two objects have a unique joint") {
    const MarginalMatrix m{{{q("0.7"), q("0.3")}, {q("0.3"), q("0.7")}}};
    const auto [t, query] = pairwise_query(build_ranking_theory(m), 0, 1);
    const auto r = credal_bounds_single_space(t, query);
    CHECK(r.lower == q("0.7"));
    CHECK(r.upper == q("0.7"));
}

TEST_CASE("four objects can leave a pair undetermined") {
    support::Rng rng(9);
    const Theory base = build_ranking_theory(smooth_marginals(counts_from_rankings(random_dataset(rng, 4, 12))));
    bool loose = false;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) {
            const auto [t, query] = pairwise_query(base, a, b);
            const auto r = credal_bounds_single_space(t, query);
            loose |= r.lower < r.upper;
        }
    CHECK(loose);
}

TEST_CASE("decision rule") {
    CHECK(decide_preference(interval("0.6", "0.8")) == Verdict::first);
    CHECK(decide_preference(interval("0.3", "0.7")) == Verdict::indeterminate);
    CHECK(decide_preference(interval("0.2", "0.4")) == Verdict::second);
    CHECK(decide_preference(interval("0.5", "0.8")) == Verdict::indeterminate);
    CHECK(decide_preference(interval("0.2", "0.5")) == Verdict::indeterminate);
    CHECK(decide_preference(interval("0.5", "0.5")) == Verdict::indeterminate);
    CHECK(decide_preference(interval("0.65", "0.8"), q("0.7")) == Verdict::indeterminate);
}

TEST_CASE("ICL proxy") {
    const MarginalMatrix uniform{std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, q("1/3")))};
    CHECK(icl_proxy(uniform, 0, 2) == q("1/2"));
    const MarginalMatrix sharp{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    CHECK(icl_proxy(sharp, 0, 1) == 1);
    CHECK(icl_proxy(sharp, 2, 0) == 0);
    support::Rng rng(13);
    const auto m = smooth_marginals(counts_from_rankings(random_dataset(rng, 4, 9)));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) CHECK(icl_proxy(m, a, b) + icl_proxy(m, b, a) == 1);
}

TEST_CASE("identical rankings give determinate, correct answers") {
    const auto report = evaluate(parse_rankings("b,d,a,c x7\n"));
    REQUIRE(report.pairs.size() == 6);
    CHECK(report.determinacy_rate == 1);
    REQUIRE(report.icl_acc_determinate);
    CHECK(*report.icl_acc_determinate == 1);
    CHECK_FALSE(report.icl_acc_indeterminate);
    for (const auto& p : report.pairs) CHECK(p.truth == p.ccl_verdict);
}

TEST_CASE("a single ranking is fully determinate") {
    const auto report = evaluate(parse_rankings("c,a,b\n"));
    CHECK(report.determinacy_rate == 1);
}

TEST_CASE("rankings and their counts give the same intervals") {
    const auto data = parse_rankings(ccl::io::read_file(support::data_path("sample.rankings")));
    const auto a = evaluate(data);
    const auto b = evaluate(parse_counts(ccl::io::read_file(support::data_path("sample-counts.csv"))));
    REQUIRE(a.pairs.size() == b.pairs.size());
    CHECK(a.counts == b.counts);
    CHECK(a.determinacy_rate == b.determinacy_rate);
    for (std::size_t k = 0; k < a.pairs.size(); ++k) {
        CHECK(a.pairs[k].interval.lower == b.pairs[k].interval.lower);
        CHECK(a.pairs[k].interval.upper == b.pairs[k].interval.upper);
        CHECK(a.pairs[k].icl_value == b.pairs[k].icl_value);
        CHECK_FALSE(b.pairs[k].truth);
    }
}

TEST_CASE("parallel evaluation matches serial and PSAT brackets LP") {
    support::Rng rng(21);
    const auto data = random_dataset(rng, 4, 15);
    EvaluationOptions serial;
    serial.execution = Execution::serial;
    const auto a = evaluate(data, serial);
    const auto b = evaluate(data);
    EvaluationOptions psat;
    psat.backend = Backend::psat;
    psat.epsilon = Rational(1, 256);
    const auto c = evaluate(data, psat);
    for (std::size_t k = 0; k < a.pairs.size(); ++k) {
        CHECK(a.pairs[k].interval.lower == b.pairs[k].interval.lower);
        CHECK(a.pairs[k].interval.upper == b.pairs[k].interval.upper);
        CHECK(a.pairs[k].ccl_verdict == b.pairs[k].ccl_verdict);
        CHECK(c.pairs[k].interval.lower <= a.pairs[k].interval.lower);
        CHECK(a.pairs[k].interval.lower - c.pairs[k].interval.lower < psat.epsilon);
        CHECK(c.pairs[k].interval.upper >= a.pairs[k].interval.upper);
        CHECK(c.pairs[k].interval.upper - a.pairs[k].interval.upper < psat.epsilon);
    }
}

TEST_CASE("verdicts are equivariant under relabelling") {
    support::Rng rng(27);
    const auto data = random_dataset(rng, 4, 11);
    const auto base = evaluate(data);
    const std::vector<std::size_t> relabel{2, 0, 3, 1}; // old index -> new index
    RankingDataset moved;
    moved.names.resize(4);
    for (std::size_t i = 0; i < 4; ++i) moved.names[relabel[i]] = data.names[i];
    for (const auto& r : data.rankings) {
        std::vector<std::size_t> m;
        for (std::size_t i : r) m.push_back(relabel[i]);
        moved.rankings.push_back(m);
    }
    const auto other = evaluate(moved);
    for (const auto& p : base.pairs) {
        std::size_t a = relabel[p.first], b = relabel[p.second];
        const bool swapped = a > b;
        if (swapped) std::swap(a, b);
        const auto it = std::find_if(other.pairs.begin(), other.pairs.end(),
                                     [&](const PairReport& o) { return o.first == a && o.second == b; });
        REQUIRE(it != other.pairs.end());
        Verdict expected = p.ccl_verdict;
        if (swapped && expected != Verdict::indeterminate)
            expected = expected == Verdict::first ? Verdict::second : Verdict::first;
        CHECK(it->ccl_verdict == expected);
        CHECK(it->interval.lower == (swapped ? 1 - p.interval.upper : p.interval.lower));
    }
}

TEST_CASE("holdout split is seeded") {
    support::Rng rng(33);
    const auto data = random_dataset(rng, 3, 20);
    EvaluationOptions split;
    split.holdout = q("0.25");
    split.seed = 5;
    const auto a = evaluate(data, split), b = evaluate(data, split);
    CHECK(a.counts.total == 15);
    CHECK(a.counts == b.counts);
    split.holdout = 1;
    CHECK_THROWS_AS(evaluate(data, split), std::invalid_argument);
}
