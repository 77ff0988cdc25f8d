#include "ccl/ranking.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "ccl/psat.hpp"

namespace ccl::ranking {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = s.find(sep);
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) return out;
        s.remove_prefix(pos + 1);
    }
}

std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.emplace_back(number, line);
    }
    return out;
}

std::uint64_t parse_count(std::string_view s, std::size_t line) {
    std::uint64_t value = 0;
    if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw FormatError("line " + std::to_string(line) + ": expected a non-negative integer, got '" +
                          std::string(s) + "'");
    for (char c : s) value = value * 10 + std::uint64_t(c - '0');
    return value;
}

void check_name(std::string_view name, std::size_t line) {
    if (name.empty() || name.find_first_of(" \t") != std::string_view::npos)
        throw FormatError("line " + std::to_string(line) + ": bad object name '" + std::string(name) + "'");
}

} // namespace

RankingDataset parse_rankings(std::string_view text) {
    std::vector<std::pair<std::vector<std::string>, std::uint64_t>> raw;
    std::set<std::string> names;
    for (auto [number, line] : content_lines(text)) {
        std::uint64_t multiplicity = 1;
        // A trailing " xK" is a multiplicity unless it follows a comma.
        if (const auto space = line.find_last_of(" \t"); space != std::string_view::npos) {
            const std::string_view suffix = line.substr(space + 1);
            const std::string_view rest = trim(line.substr(0, space));
            if (!rest.empty() && rest.back() != ',' && suffix.size() >= 2 && suffix.front() == 'x') {
                multiplicity = parse_count(suffix.substr(1), number);
                line = rest;
            }
        }
        std::vector<std::string> ranking;
        for (std::string_view name : split(line, ',')) {
            check_name(name, number);
            ranking.emplace_back(name);
        }
        if (std::set<std::string>(ranking.begin(), ranking.end()).size() != ranking.size())
            throw FormatError("line " + std::to_string(number) + ": object repeated in ranking");
        names.insert(ranking.begin(), ranking.end());
        raw.emplace_back(std::move(ranking), multiplicity);
    }

    RankingDataset out;
    out.names.assign(names.begin(), names.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < out.names.size(); ++i) index.emplace(out.names[i], i);
    for (const auto& [ranking, multiplicity] : raw) {
        if (ranking.size() != out.names.size())
            throw FormatError("ranking of " + std::to_string(ranking.size()) + " objects, expected " +
                              std::to_string(out.names.size()));
        std::vector<std::size_t> ids;
        for (const auto& name : ranking) ids.push_back(index.at(name));
        for (std::uint64_t k = 0; k < multiplicity; ++k) out.rankings.push_back(ids);
    }
    return out;
}

CountMatrix parse_counts(std::string_view text) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw FormatError("empty counts file");

    CountMatrix out;
    for (std::string_view name : split(lines.front().second, ',')) {
        check_name(name, lines.front().first);
        out.names.emplace_back(name);
    }
    const std::size_t n = out.names.size();
    if (std::set<std::string>(out.names.begin(), out.names.end()).size() != n)
        throw FormatError("duplicate object name in header");
    if (lines.size() != n + 2)
        throw FormatError("expected " + std::to_string(n) + " count rows and an N= line");

    for (std::size_t j = 0; j < n; ++j) {
        const auto [number, line] = lines[j + 1];
        const auto cells = split(line, ',');
        if (cells.size() != n)
            throw FormatError("line " + std::to_string(number) + ": expected " + std::to_string(n) + " counts");
        auto& row = out.counts.emplace_back();
        for (auto cell : cells) row.push_back(parse_count(cell, number));
    }
    const auto [number, last] = lines.back();
    if (!last.starts_with("N=")) throw FormatError("line " + std::to_string(number) + ": expected 'N=<int>'");
    out.total = parse_count(trim(last.substr(2)), number);

    for (std::size_t a = 0; a < n; ++a) {
        std::uint64_t row = 0, column = 0;
        for (std::size_t b = 0; b < n; ++b) {
            row += out.counts[a][b];
            column += out.counts[b][a];
        }
        if (row != out.total || column != out.total)
            throw FormatError("count rows and columns must each sum to N=" + std::to_string(out.total));
    }
    return out;
}

std::string to_csv(const CountMatrix& counts) {
    std::ostringstream out;
    for (std::size_t i = 0; i < counts.names.size(); ++i) out << (i ? "," : "") << counts.names[i];
    out << "\n";
    for (const auto& row : counts.counts) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    out << "N=" << counts.total << "\n";
    return out.str();
}

CountMatrix counts_from_rankings(const RankingDataset& dataset) {
    const std::size_t n = dataset.size();
    CountMatrix out;
    out.names = dataset.names;
    out.counts.assign(n, std::vector<std::uint64_t>(n, 0));
    for (const auto& ranking : dataset.rankings) {
        std::vector<bool> seen(n, false);
        if (ranking.size() != n) throw FormatError("ranking is not a permutation of the objects");
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t i = ranking[j];
            if (i >= n || seen[i]) throw FormatError("ranking is not a permutation of the objects");
            seen[i] = true;
            ++out.counts[j][i];
        }
        ++out.total;
    }
    return out;
}

MarginalMatrix smooth_marginals(const CountMatrix& counts, const Rational& equivalent_size) {
    const std::size_t n = counts.names.size();
    const Rational denominator = Rational(counts.total) + equivalent_size;
    if (n == 0) return {};
    if (denominator <= 0) throw std::invalid_argument("smoothing needs N + s > 0");
    const Rational prior = equivalent_size / n;

    MarginalMatrix out;
    out.alpha.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.alpha[i][j] = (Rational(counts.counts[j][i]) + prior) / denominator;
    return out;
}

namespace {

Atom rank_atom(std::size_t rank, std::size_t object) {
    return Atom("r" + std::to_string(rank + 1), {Term::constant("h" + std::to_string(object + 1))});
}

} // namespace

Theory build_ranking_theory(const MarginalMatrix& marginals) {
    const std::size_t n = marginals.size();
    Theory theory;
    ChoiceSpace space;
    for (std::size_t object = 0; object < n; ++object) {
        Alternative alt;
        for (std::size_t rank = 0; rank < n; ++rank) alt.atoms.push_back(rank_atom(rank, object));
        space.alternatives.push_back(std::move(alt));
    }
    for (std::size_t rank = 0; rank < n; ++rank) {
        Alternative alt;
        for (std::size_t object = 0; object < n; ++object) alt.atoms.push_back(rank_atom(rank, object));
        space.alternatives.push_back(std::move(alt));
    }
    if (n > 0) theory.spaces.push_back(std::move(space));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) theory.mu[rank_atom(j, i)] = marginals.alpha[i][j];
    return theory;
}

std::pair<Theory, Query> pairwise_query(const Theory& theory, std::size_t first, std::size_t second,
                                        RankConvention convention) {
    if (first == second) throw std::invalid_argument("pairwise query needs two distinct objects");
    const std::size_t n = theory.spaces.empty() ? 0 : theory.spaces.front().alternatives.size() / 2;
    if (first >= n || second >= n) throw std::out_of_range("object index out of range");

    Theory out = theory;
    const Atom q("q");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            const bool selected = convention == RankConvention::better_first ? a < b : a > b;
            if (selected)
                out.program.clauses.push_back({q, {{rank_atom(a, first), true}, {rank_atom(b, second), true}}});
        }
    return {std::move(out), Query{{{q, true}}}};
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::first: return "first";
    case Verdict::second: return "second";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

Verdict decide_preference(const IntervalResult& interval, const Rational& threshold) {
    if (interval.lower > threshold) return Verdict::first;
    if (interval.upper < threshold) return Verdict::second;
    return Verdict::indeterminate;
}

Rational icl_proxy(const MarginalMatrix& marginals, std::size_t first, std::size_t second) {
    const std::size_t n = marginals.size();
    if (first >= n || second >= n || first == second) throw std::out_of_range("bad object pair");
    std::vector<std::size_t> rank(n); // rank[i] of object i
    std::iota(rank.begin(), rank.end(), 0);
    Rational total = 0, favourable = 0;
    do {
        Rational weight = 1;
        for (std::size_t i = 0; i < n && weight != 0; ++i) weight *= marginals.alpha[i][rank[i]];
        total += weight;
        if (rank[first] < rank[second]) favourable += weight;
    } while (std::next_permutation(rank.begin(), rank.end()));
    if (total == 0) throw std::invalid_argument("marginals give zero mass to every permutation");
    return favourable / total;
}

namespace {

using Truth = std::vector<std::vector<std::optional<Verdict>>>;

Truth majority(const RankingDataset& dataset, const std::vector<std::size_t>& which) {
    const std::size_t n = dataset.size();
    std::vector<std::vector<std::int64_t>> margin(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t r : which) {
        const auto& ranking = dataset.rankings[r];
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                ++margin[ranking[a]][ranking[b]];
                --margin[ranking[b]][ranking[a]];
            }
    }
    Truth out(n, std::vector<std::optional<Verdict>>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (margin[a][b] > 0) out[a][b] = Verdict::first;
            if (margin[a][b] < 0) out[a][b] = Verdict::second;
        }
    return out;
}

IntervalResult pair_interval(const Theory& base, std::size_t first, std::size_t second,
                             const EvaluationOptions& options) {
    auto [theory, query] = pairwise_query(base, first, second);
    if (options.backend == Backend::psat) return bisect_bounds(theory, query, options.epsilon).interval;
    return credal_bounds_single_space(theory, query);
}

EvaluationReport run(const CountMatrix& counts, const Truth* truth, const EvaluationOptions& options) {
    const std::size_t n = counts.names.size();
    const MarginalMatrix marginals = smooth_marginals(counts, options.equivalent_size);
    const Theory base = build_ranking_theory(marginals);

    EvaluationReport report;
    report.counts = counts;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            PairReport& p = report.pairs.emplace_back();
            p.first = a;
            p.second = b;
            if (truth) p.truth = (*truth)[a][b];
        }

    auto fill = [&](PairReport& p) {
        p.interval = pair_interval(base, p.first, p.second, options);
        p.ccl_verdict = decide_preference(p.interval, options.threshold);
        p.icl_value = icl_proxy(marginals, p.first, p.second);
        p.icl_verdict = p.icl_value > options.threshold   ? Verdict::first
                        : p.icl_value < options.threshold ? Verdict::second
                                                          : Verdict::indeterminate;
    };

    const std::ptrdiff_t count = std::ptrdiff_t(report.pairs.size());
    if (options.execution == Execution::parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < count; ++k) {
            try {
                fill(report.pairs[std::size_t(k)]);
            } catch (...) {
#pragma omp critical(ccl_ranking_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (PairReport& p : report.pairs) fill(p);
    }

    std::size_t determinate = 0, det_total = 0, det_correct = 0, ind_total = 0, ind_correct = 0;
    for (const PairReport& p : report.pairs) {
        const bool is_determinate = p.ccl_verdict != Verdict::indeterminate;
        determinate += is_determinate;
        if (!p.truth) continue;
        const bool correct = p.icl_verdict == *p.truth;
        (is_determinate ? det_total : ind_total) += 1;
        (is_determinate ? det_correct : ind_correct) += correct;
    }
    report.determinacy_rate = report.pairs.empty() ? Rational(0) : Rational(determinate, report.pairs.size());
    if (det_total) report.icl_acc_determinate = Rational(det_correct, det_total);
    if (ind_total) report.icl_acc_indeterminate = Rational(ind_correct, ind_total);
    return report;
}

} // namespace

EvaluationReport evaluate(const RankingDataset& dataset, const EvaluationOptions& options) {
    std::vector<std::size_t> order(dataset.rankings.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> fit = order, test = order;

    if (options.holdout < 0 || options.holdout >= 1) throw std::invalid_argument("holdout fraction must be in [0,1)");
    if (options.holdout > 0) {
        std::mt19937_64 rng(options.seed);
        std::shuffle(order.begin(), order.end(), rng);
        const Rational scaled = options.holdout * Rational(order.size());
        const auto held = std::size_t((numerator(scaled) / denominator(scaled)).convert_to<unsigned long long>());
        test.assign(order.begin(), order.begin() + std::ptrdiff_t(held));
        fit.assign(order.begin() + std::ptrdiff_t(held), order.end());
    }

    RankingDataset fit_set{dataset.names, {}};
    for (std::size_t r : fit) fit_set.rankings.push_back(dataset.rankings[r]);
    const Truth truth = majority(dataset, test);
    return run(counts_from_rankings(fit_set), &truth, options);
}

EvaluationReport evaluate(const CountMatrix& counts, const EvaluationOptions& options) {
    return run(counts, nullptr, options);
}

} // namespace ccl::ranking
