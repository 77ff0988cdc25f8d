#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccl/inference.hpp"
#include "ccl/kernels.hpp"
#include "ccl/rational.hpp"
#include "ccl/theory.hpp"

namespace ccl::ranking {

/// Complete rankings over `names`. Each ranking lists object indices
/// best-first and is a permutation of 0..n-1.
struct RankingDataset {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> rankings;

    std::size_t size() const { return names.size(); }
};

/// counts[j][i] = number of rankings placing object i at rank j (0-based).
struct CountMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<std::uint64_t>> counts;
    std::uint64_t total = 0;

    friend bool operator==(const CountMatrix&, const CountMatrix&) = default;
};

/// alpha[i][j] = probability that object i takes rank j.
struct MarginalMatrix {
    std::vector<std::vector<Rational>> alpha;

    std::size_t size() const { return alpha.size(); }
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One ranking per line, names comma-separated best-first, optional
/// " xK" multiplicity suffix; blank lines and '#' comments are skipped.
/// Object names are ordered alphabetically. Throws FormatError.
RankingDataset parse_rankings(std::string_view text);

/// Header row of names, n rows of integer counts (rank 1..n), then "N=<int>".
/// Throws FormatError, including when a row or column does not sum to N.
CountMatrix parse_counts(std::string_view text);
std::string to_csv(const CountMatrix& counts);

CountMatrix counts_from_rankings(const RankingDataset& dataset);

/// alpha[i][j] = (counts[j][i] + s/n) / (N + s). Requires N + s > 0.
MarginalMatrix smooth_marginals(const CountMatrix& counts, const Rational& equivalent_size = 2);

/// Empty program, one choice space with alternatives C_1..C_n (object l
/// takes exactly one rank) followed by C'_1..C'_n (rank l holds exactly one
/// object). Atom r<j>(h<i>) means object i has rank j, both 1-based.
Theory build_ranking_theory(const MarginalMatrix& marginals);

/// Which rank comparison the pairwise clauses encode.
enum class RankConvention {
    better_first, // q iff i' has the smaller rank index (ranked better)
    literal,      // q iff i' has the larger rank index
};

/// Adds q :- r<j'>(h<i'>), r<j''>(h<i''>) for every rank pair selected by
/// the convention and returns the extended theory with query {q}.
/// Indices are 0-based. Throws std::out_of_range / std::invalid_argument.
std::pair<Theory, Query> pairwise_query(const Theory& theory, std::size_t first, std::size_t second,
                                        RankConvention convention = RankConvention::better_first);

enum class Verdict { first, second, indeterminate };

std::string_view to_string(Verdict verdict);

/// `first` iff lower > threshold, `second` iff upper < threshold,
/// otherwise indeterminate (touching the threshold counts as overlap).
Verdict decide_preference(const IntervalResult& interval, const Rational& threshold = Rational(1, 2));

/// Probability that `first` is ranked above `second` under the product of
/// per-object marginals restricted to permutations and renormalized.
Rational icl_proxy(const MarginalMatrix& marginals, std::size_t first, std::size_t second);

enum class Backend { lp, psat };

struct EvaluationOptions {
    Rational threshold = Rational(1, 2);
    Rational equivalent_size = 2;
    Backend backend = Backend::lp;
    Rational epsilon = Rational(1, 1024); // psat backend only
    /// Fraction of rankings held out as ground truth; 0 uses every ranking
    /// for both fitting and truth.
    Rational holdout = 0;
    std::uint64_t seed = 0;
    Execution execution = Execution::parallel;
};

struct PairReport {
    std::size_t first = 0;
    std::size_t second = 0;
    IntervalResult interval;
    Verdict ccl_verdict = Verdict::indeterminate;
    Rational icl_value;
    Verdict icl_verdict = Verdict::indeterminate;
    /// Majority preference over the truth rankings; empty on ties or when
    /// no rankings are available.
    std::optional<Verdict> truth;
};

struct EvaluationReport {
    CountMatrix counts; // the counts the marginals were fitted on
    std::vector<PairReport> pairs; // (i', i'') with i' < i'', lexicographic
    Rational determinacy_rate;
    std::optional<Rational> icl_acc_determinate;
    std::optional<Rational> icl_acc_indeterminate;
};

EvaluationReport evaluate(const RankingDataset& dataset, const EvaluationOptions& options = {});
/// Counts only: no ground truth, so accuracies are empty.
EvaluationReport evaluate(const CountMatrix& counts, const EvaluationOptions& options = {});

} // namespace ccl::ranking
