#include "ccl/formula.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ccl/errors.hpp"

namespace ccl {

Formula Formula::constant(bool value) {
    Formula f;
    f.kind_ = Kind::constant;
    f.value_ = value;
    return f;
}

Formula Formula::variable(std::string name) {
    Formula f;
    f.kind_ = Kind::variable;
    f.name_ = std::move(name);
    return f;
}

Formula Formula::negation(Formula operand) {
    Formula f;
    f.kind_ = Kind::negation;
    f.operands_.push_back(std::move(operand));
    return f;
}

namespace {

// Drops `unit` constants; returns true if an absorbing constant was seen.
bool drop_constants(std::vector<Formula>& operands, bool unit) {
    bool absorbed = false;
    std::erase_if(operands, [&](const Formula& f) {
        if (f.kind() != Formula::Kind::constant) return false;
        absorbed |= f.value() != unit;
        return true;
    });
    return absorbed;
}

} // namespace

Formula Formula::conjunction(std::vector<Formula> operands) {
    if (drop_constants(operands, true)) return constant(false);
    if (operands.empty()) return constant(true);
    if (operands.size() == 1) return std::move(operands.front());
    Formula f;
    f.kind_ = Kind::conjunction;
    f.operands_ = std::move(operands);
    return f;
}

Formula Formula::disjunction(std::vector<Formula> operands) {
    if (drop_constants(operands, false)) return constant(true);
    if (operands.empty()) return constant(false);
    if (operands.size() == 1) return std::move(operands.front());
    Formula f;
    f.kind_ = Kind::disjunction;
    f.operands_ = std::move(operands);
    return f;
}

Formula Formula::exclusive(std::vector<Formula> operands) {
    if (operands.empty()) return constant(false);
    if (operands.size() == 1) return std::move(operands.front());
    Formula f;
    f.kind_ = Kind::exclusive;
    f.operands_ = std::move(operands);
    return f;
}

Formula Formula::equivalence(const Formula& lhs, const Formula& rhs) {
    return conjunction({disjunction({negation(lhs), rhs}), disjunction({lhs, negation(rhs)})});
}

bool Formula::evaluate(const Lookup& lookup) const {
    switch (kind_) {
    case Kind::constant: return value_;
    case Kind::variable: return lookup(name_);
    case Kind::negation: return !operands_.front().evaluate(lookup);
    case Kind::conjunction:
        return std::all_of(operands_.begin(), operands_.end(), [&](const Formula& f) { return f.evaluate(lookup); });
    case Kind::disjunction:
        return std::any_of(operands_.begin(), operands_.end(), [&](const Formula& f) { return f.evaluate(lookup); });
    case Kind::exclusive: {
        std::size_t count = 0;
        for (const Formula& f : operands_)
            if (f.evaluate(lookup) && ++count > 1) return false;
        return count == 1;
    }
    }
    return false;
}

void Formula::collect(std::set<std::string>& out) const {
    if (kind_ == Kind::variable) out.insert(name_);
    for (const Formula& f : operands_) f.collect(out);
}

std::set<std::string> Formula::variables() const {
    std::set<std::string> out;
    collect(out);
    return out;
}

std::string Formula::to_string() const {
    auto join = [&](const char* op) {
        std::string out = "(";
        for (std::size_t i = 0; i < operands_.size(); ++i) {
            if (i) out += op;
            out += operands_[i].to_string();
        }
        return out + ")";
    };
    switch (kind_) {
    case Kind::constant: return value_ ? "true" : "false";
    case Kind::variable: return name_;
    case Kind::negation: return "~" + operands_.front().to_string();
    case Kind::conjunction: return join(" & ");
    case Kind::disjunction: return join(" | ");
    case Kind::exclusive: return join(" ^ ");
    }
    return "?";
}

// ---------------------------------------------------------------------------
// CNF
// ---------------------------------------------------------------------------

namespace {

using ClauseSet = std::set<std::set<CnfLiteral>>;

bool tautology(const std::set<CnfLiteral>& clause) {
    for (const CnfLiteral& l : clause)
        if (l.positive && clause.contains({l.variable, false})) return true;
    return false;
}

class CnfBuilder {
public:
    explicit CnfBuilder(std::size_t cap) : cap_(cap) {}

    ClauseSet build(const Formula& f, bool positive) {
        using K = Formula::Kind;
        switch (f.kind()) {
        case K::constant:
            return f.value() == positive ? ClauseSet{} : ClauseSet{std::set<CnfLiteral>{}};
        case K::variable:
            return ClauseSet{{CnfLiteral{f.name(), positive}}};
        case K::negation:
            return build(f.operands().front(), !positive);
        case K::conjunction:
            return positive ? all(f.operands(), true) : any(f.operands(), false);
        case K::disjunction:
            return positive ? any(f.operands(), true) : all(f.operands(), false);
        case K::exclusive:
            return build(expand_exclusive(f.operands()), positive);
        }
        return {};
    }

private:
    std::size_t cap_;

    /// (a1 | ... | an) & AND_{i<j} (~ai | ~aj)
    static Formula expand_exclusive(const std::vector<Formula>& ops) {
        std::vector<Formula> parts{Formula::disjunction(ops)};
        for (std::size_t i = 0; i < ops.size(); ++i)
            for (std::size_t j = i + 1; j < ops.size(); ++j)
                parts.push_back(Formula::disjunction({Formula::negation(ops[i]), Formula::negation(ops[j])}));
        return Formula::conjunction(std::move(parts));
    }

    void check(const ClauseSet& s) const {
        if (s.size() > cap_) throw CapacityError("CNF conversion exceeds " + std::to_string(cap_) + " clauses");
    }

    ClauseSet all(const std::vector<Formula>& ops, bool positive) {
        ClauseSet out;
        for (const Formula& f : ops) {
            ClauseSet part = build(f, positive);
            out.insert(part.begin(), part.end());
            check(out);
        }
        return out;
    }

    ClauseSet any(const std::vector<Formula>& ops, bool positive) {
        ClauseSet acc{std::set<CnfLiteral>{}}; // false, the unit of disjunction-distribution
        for (const Formula& f : ops) {
            ClauseSet part = build(f, positive);
            ClauseSet next;
            for (const auto& x : acc)
                for (const auto& y : part) {
                    std::set<CnfLiteral> merged = x;
                    merged.insert(y.begin(), y.end());
                    if (!tautology(merged)) next.insert(std::move(merged));
                }
            check(next);
            acc = std::move(next);
        }
        return acc;
    }
};

} // namespace

Cnf to_cnf(const Formula& formula, std::size_t max_clauses) {
    ClauseSet clauses = CnfBuilder(max_clauses).build(formula, true);
    if (clauses.size() > max_clauses)
        throw CapacityError("CNF conversion exceeds " + std::to_string(max_clauses) + " clauses");
    Cnf out;
    out.reserve(clauses.size());
    for (const auto& c : clauses) out.emplace_back(c.begin(), c.end());
    return out;
}

bool evaluate(const Cnf& cnf, const Formula::Lookup& lookup) {
    return std::all_of(cnf.begin(), cnf.end(), [&](const CnfClause& clause) {
        return std::any_of(clause.begin(), clause.end(),
                           [&](const CnfLiteral& l) { return lookup(l.variable) == l.positive; });
    });
}

std::vector<std::vector<bool>> enumerate_models(const Cnf& cnf, const std::vector<std::string>& variables,
                                                std::size_t max_models) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < variables.size(); ++i) index.emplace(variables[i], i);

    // Each clause is checked once its last variable (in enumeration order)
    // is assigned.
    struct Indexed {
        std::vector<std::pair<std::size_t, bool>> literals;
    };
    std::vector<std::vector<Indexed>> due(variables.size() + 1);
    for (const CnfClause& clause : cnf) {
        Indexed ic;
        std::size_t last = 0;
        for (const CnfLiteral& l : clause) {
            auto it = index.find(l.variable);
            if (it == index.end()) throw std::invalid_argument("CNF variable " + l.variable + " not in variable list");
            ic.literals.emplace_back(it->second, l.positive);
            last = std::max(last, it->second + 1);
        }
        due[last].push_back(std::move(ic));
    }

    std::vector<std::vector<bool>> models;
    std::vector<bool> assignment(variables.size(), false);
    auto satisfied = [&](std::size_t depth) {
        for (const Indexed& c : due[depth]) {
            bool sat = std::any_of(c.literals.begin(), c.literals.end(),
                                   [&](const auto& l) { return assignment[l.first] == l.second; });
            if (!sat) return false;
        }
        return true;
    };
    if (!satisfied(0)) return models; // empty clause

    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == variables.size()) {
            if (models.size() >= max_models)
                throw CapacityError("more than " + std::to_string(max_models) + " models");
            models.push_back(assignment);
            return;
        }
        for (bool v : {false, true}) {
            assignment[depth] = v;
            if (satisfied(depth + 1)) self(self, depth + 1);
        }
        assignment[depth] = false;
    };
    recurse(recurse, 0);
    return models;
}

} // namespace ccl
