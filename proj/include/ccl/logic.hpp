#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccl {

// ---------------------------------------------------------------------------
// Syntax
// ---------------------------------------------------------------------------

struct Term {
    enum class Kind { constant, variable };

    Kind kind = Kind::constant;
    std::string name;

    static Term constant(std::string name) { return {Kind::constant, std::move(name)}; }
    static Term variable(std::string name) { return {Kind::variable, std::move(name)}; }

    bool is_variable() const { return kind == Kind::variable; }

    friend auto operator<=>(const Term&, const Term&) = default;
    friend bool operator==(const Term&, const Term&) = default;
};

/// r(t1,...,tk); zero-ary atoms are propositions.
struct Atom {
    std::string relation;
    std::vector<Term> args;

    Atom() = default;
    explicit Atom(std::string relation, std::vector<Term> args = {})
        : relation(std::move(relation)), args(std::move(args)) {}

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;

    friend auto operator<=>(const Atom&, const Atom&) = default;
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
    Atom atom;
    bool positive = true;

    friend auto operator<=>(const Literal&, const Literal&) = default;
    friend bool operator==(const Literal&, const Literal&) = default;
};

/// head <- body. Negation only occurs in the body.
struct Clause {
    Atom head;
    std::vector<Literal> body;

    bool is_fact() const { return body.empty(); }

    friend bool operator==(const Clause&, const Clause&) = default;
};

struct Program {
    std::vector<Clause> clauses;

    friend bool operator==(const Program&, const Program&) = default;
};

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);
std::string to_string(const Literal& literal);
std::string to_string(const Clause& clause);
/// One clause per line, re-parseable by parse_program.
std::string to_string(const Program& program);

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A relation symbol used with two different arities.
class ArityError : public ParseError {
public:
    using ParseError::ParseError;
};

/// The atom dependency graph has a cycle; `cycle()` lists one, in order.
class CycleError : public std::runtime_error {
public:
    explicit CycleError(std::vector<std::string> cycle);

    const std::vector<std::string>& cycle() const { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

Program parse_program(std::string_view text);
Atom parse_atom(std::string_view text);
/// Comma separated literals, e.g. "\+ a1g, \+ a2r". A trailing '.' is allowed.
std::vector<Literal> parse_literals(std::string_view text);

// ---------------------------------------------------------------------------
// Grounding and evaluation
// ---------------------------------------------------------------------------

using AtomId = std::uint32_t;

struct GroundClause {
    AtomId head = 0;
    std::vector<AtomId> positive;
    std::vector<AtomId> negative;
};

/// Variable-free program over an interned Herbrand base.
class GroundProgram {
public:
    /// Adds a ground atom to the Herbrand base (no-op if present).
    AtomId intern(const Atom& atom);
    std::optional<AtomId> find(const Atom& atom) const;

    const Atom& atom(AtomId id) const { return atoms_.at(id); }
    const std::vector<Atom>& herbrand_base() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    void add_clause(GroundClause clause);
    const std::vector<GroundClause>& clauses() const { return clauses_; }

private:
    std::vector<Atom> atoms_;
    std::map<Atom, AtomId> index_;
    std::vector<GroundClause> clauses_;
};

/// Constant symbols occurring anywhere in the program.
std::set<std::string> constants_of(const Program& program);

/// All groundings of every clause over `constants`, in source order with
/// variables substituted in order of first occurrence.
GroundProgram ground(const Program& program, const std::set<std::string>& constants);

/// Positive integer per atom; head levels exceed body levels.
struct LevelMapping {
    std::vector<int> level; // indexed by AtomId

    int operator[](AtomId id) const { return level.at(id); }
};

/// Longest-path layering of the body->head dependency graph.
/// Throws CycleError if the program is not acyclic.
LevelMapping check_acyclic(const GroundProgram& program);

/// Total truth assignment over a Herbrand base.
struct Interpretation {
    std::vector<bool> truth; // indexed by AtomId

    bool holds(AtomId id) const { return truth.at(id); }
    std::size_t size() const { return truth.size(); }

    friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

/// Precomputes the level order of an acyclic ground program so that the
/// stable model for many fact sets can be evaluated cheaply.
class ModelEvaluator {
public:
    explicit ModelEvaluator(const GroundProgram& program);

    Interpretation evaluate(std::span<const AtomId> facts) const;

private:
    std::size_t num_atoms_;
    std::vector<AtomId> order_;
    std::vector<std::vector<GroundClause>> rules_by_head_;
};

/// Unique stable model of program + {a <- | a in facts}.
Interpretation stable_model(const GroundProgram& program, std::span<const AtomId> facts);
/// As above; every fact must already be in the Herbrand base.
Interpretation stable_model(const GroundProgram& program, const std::vector<Atom>& facts);

} // namespace ccl
