#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ccl {

/// Propositional formula over named variables (ground atoms rendered as text).
class Formula {
public:
    enum class Kind {
        constant,
        variable,
        negation,
        conjunction,
        disjunction,
        /// n-ary exclusive choice: exactly one operand holds. For two
        /// operands this is ordinary XOR.
        exclusive,
    };

    static Formula constant(bool value);
    static Formula variable(std::string name);
    static Formula negation(Formula operand);
    /// Constant operands are folded. Empty conjunction is true; a single
    /// operand is returned unchanged.
    static Formula conjunction(std::vector<Formula> operands);
    /// Constant operands are folded. Empty disjunction is false; a single
    /// operand is returned unchanged.
    static Formula disjunction(std::vector<Formula> operands);
    /// A single operand is returned unchanged.
    static Formula exclusive(std::vector<Formula> operands);
    static Formula equivalence(const Formula& lhs, const Formula& rhs);

    Kind kind() const { return kind_; }
    bool value() const { return value_; }
    const std::string& name() const { return name_; }
    const std::vector<Formula>& operands() const { return operands_; }

    using Lookup = std::function<bool(const std::string&)>;
    bool evaluate(const Lookup& lookup) const;

    std::set<std::string> variables() const;
    std::string to_string() const;

private:
    Formula() = default;

    Kind kind_ = Kind::constant;
    bool value_ = true;
    std::string name_;
    std::vector<Formula> operands_;

    void collect(std::set<std::string>& out) const;
};

struct CnfLiteral {
    std::string variable;
    bool positive = true;

    friend auto operator<=>(const CnfLiteral&, const CnfLiteral&) = default;
    friend bool operator==(const CnfLiteral&, const CnfLiteral&) = default;
};

using CnfClause = std::vector<CnfLiteral>;
using Cnf = std::vector<CnfClause>;

/// Equivalent CNF over the same variables (no auxiliaries). Exclusive
/// choices become one disjunction plus pairwise negated conjunctions;
/// other structure is distributed. Tautological clauses are dropped and
/// duplicates merged. Throws CapacityError above `max_clauses`.
Cnf to_cnf(const Formula& formula, std::size_t max_clauses = std::size_t{1} << 20);

bool evaluate(const Cnf& cnf, const Formula::Lookup& lookup);

/// All assignments over `variables` (a superset of the CNF's variables)
/// satisfying the CNF, in lexicographic order with false before true.
/// Throws CapacityError above `max_models`.
std::vector<std::vector<bool>> enumerate_models(const Cnf& cnf, const std::vector<std::string>& variables,
                                                std::size_t max_models);

} // namespace ccl
