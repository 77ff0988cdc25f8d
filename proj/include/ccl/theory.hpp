#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccl/logic.hpp"
#include "ccl/rational.hpp"

namespace ccl {

/// A set of ground atomic choices; exactly one is selected. Atoms keep their
/// declaration order, which fixes the canonical world order.
struct Alternative {
    std::vector<Atom> atoms;

    friend bool operator==(const Alternative&, const Alternative&) = default;
};

/// Alternatives whose selections are not assumed independent. Alternatives
/// of one space may share atoms.
struct ChoiceSpace {
    std::vector<Alternative> alternatives;

    /// Union of the alternatives, in first-occurrence order.
    std::vector<Atom> atomic_choices() const;

    friend bool operator==(const ChoiceSpace&, const ChoiceSpace&) = default;
};

/// Conjunction of ground literals.
struct Query {
    std::vector<Literal> literals;

    friend bool operator==(const Query&, const Query&) = default;
};

Query parse_query(std::string_view text);
std::string to_string(const Query& query);

/// <P, {C_1..C_k}, mu>. Selections in distinct spaces are independent.
struct Theory {
    Program program;
    std::vector<ChoiceSpace> spaces;
    std::map<Atom, Rational> mu;
    std::vector<Query> queries; // carried from `query` lines of a .ccl file

    /// Constants of the program and of every atomic choice; this is the
    /// grounding universe.
    std::set<std::string> constants() const;
};

struct Violation {
    enum class Kind {
        cyclic_program,
        empty_alternative,
        non_ground_choice,
        duplicate_choice,
        missing_probability,
        probability_range,
        mass_sum,
        choice_heads_clause,
        shared_across_spaces,
    };

    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(Violation::Kind kind) const;
};

/// Checks every theory invariant; violations are returned, never thrown.
ValidationReport validate_theory(const Theory& theory);

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport report);

    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// ICL as CCL: one singleton choice space per alternative.
/// Throws ValidationError if the result is not a valid theory.
Theory from_icl(Program program, std::vector<Alternative> alternatives, std::map<Atom, Rational> mu);

/// Replaces the listed (0-based) spaces by their union, placed at the
/// position of the smallest index. Throws std::out_of_range.
Theory merge_spaces(const Theory& theory, const std::set<std::size_t>& indices);

/// Reads the .ccl format: clauses, `choicespace { alternative { a: 0.1, ... } ... }`
/// blocks and `query l1, l2.` lines. Throws ParseError / ArityError.
Theory parse_theory(std::string_view text);
std::string to_string(const Theory& theory);

} // namespace ccl
