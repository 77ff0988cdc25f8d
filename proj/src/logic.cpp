#include "ccl/logic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lexer.hpp"

namespace ccl {

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::string to_string(const Term& term) { return term.name; }

std::string to_string(const Atom& atom) {
    std::string out = atom.relation;
    if (!atom.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            if (i) out += ',';
            out += atom.args[i].name;
        }
        out += ')';
    }
    return out;
}

std::string to_string(const Literal& literal) {
    return literal.positive ? to_string(literal.atom) : "\\+ " + to_string(literal.atom);
}

std::string to_string(const Clause& clause) {
    std::string out = to_string(clause.head);
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
        out += i == 0 ? " :- " : ", ";
        out += to_string(clause.body[i]);
    }
    return out + '.';
}

std::string to_string(const Program& program) {
    std::string out;
    for (const Clause& c : program.clauses) out += to_string(c) + '\n';
    return out;
}

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

std::string describe_cycle(const std::vector<std::string>& cycle) {
    std::string out = "program is not acyclic: ";
    for (const auto& a : cycle) out += a + " -> ";
    return out + (cycle.empty() ? std::string("?") : cycle.front());
}

} // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : std::runtime_error(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

// ---------------------------------------------------------------------------

Program parse_program(std::string_view text) {
    detail::TokenStream in(detail::tokenize(text));
    detail::ArityTable arities;
    Program program;
    while (!in.at(detail::Tok::end)) program.clauses.push_back(detail::read_clause(in, arities));
    return program;
}

Atom parse_atom(std::string_view text) {
    detail::TokenStream in(detail::tokenize(text));
    detail::ArityTable arities;
    Atom atom = detail::read_atom(in, arities);
    in.expect(detail::Tok::end);
    return atom;
}

std::vector<Literal> parse_literals(std::string_view text) {
    detail::TokenStream in(detail::tokenize(text));
    detail::ArityTable arities;
    std::vector<Literal> out;
    if (in.at(detail::Tok::end)) return out;
    do {
        out.push_back(detail::read_literal(in, arities));
    } while (in.accept(detail::Tok::comma));
    in.accept(detail::Tok::dot);
    in.expect(detail::Tok::end);
    return out;
}

// ---------------------------------------------------------------------------

AtomId GroundProgram::intern(const Atom& atom) {
    if (!atom.is_ground()) throw std::invalid_argument("cannot intern non-ground atom " + to_string(atom));
    auto [it, inserted] = index_.emplace(atom, static_cast<AtomId>(atoms_.size()));
    if (inserted) atoms_.push_back(atom);
    return it->second;
}

std::optional<AtomId> GroundProgram::find(const Atom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void GroundProgram::add_clause(GroundClause clause) {
    auto check = [&](AtomId id) {
        if (id >= atoms_.size()) throw std::out_of_range("ground clause refers to unknown atom id");
    };
    check(clause.head);
    std::for_each(clause.positive.begin(), clause.positive.end(), check);
    std::for_each(clause.negative.begin(), clause.negative.end(), check);
    clauses_.push_back(std::move(clause));
}

std::set<std::string> constants_of(const Program& program) {
    std::set<std::string> out;
    auto collect = [&](const Atom& a) {
        for (const Term& t : a.args)
            if (!t.is_variable()) out.insert(t.name);
    };
    for (const Clause& c : program.clauses) {
        collect(c.head);
        for (const Literal& l : c.body) collect(l.atom);
    }
    return out;
}

namespace {

std::vector<std::string> variables_of(const Clause& clause) {
    std::vector<std::string> vars;
    auto collect = [&](const Atom& a) {
        for (const Term& t : a.args)
            if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end()) vars.push_back(t.name);
    };
    collect(clause.head);
    for (const Literal& l : clause.body) collect(l.atom);
    return vars;
}

Atom substitute(const Atom& atom, const std::vector<std::string>& vars, const std::vector<const std::string*>& values) {
    Atom out = atom;
    for (Term& t : out.args) {
        if (!t.is_variable()) continue;
        auto pos = std::find(vars.begin(), vars.end(), t.name) - vars.begin();
        t = Term::constant(*values[static_cast<std::size_t>(pos)]);
    }
    return out;
}

} // namespace

GroundProgram ground(const Program& program, const std::set<std::string>& constants) {
    GroundProgram out;
    const std::vector<std::string> universe(constants.begin(), constants.end());

    for (const Clause& clause : program.clauses) {
        const auto vars = variables_of(clause);
        if (!vars.empty() && universe.empty())
            throw std::invalid_argument("cannot ground '" + to_string(clause) + "' over an empty constant set");

        // Odometer over universe^|vars|.
        std::vector<std::size_t> digits(vars.size(), 0);
        std::vector<const std::string*> values(vars.size());
        while (true) {
            for (std::size_t i = 0; i < vars.size(); ++i) values[i] = &universe[digits[i]];

            GroundClause gc;
            gc.head = out.intern(substitute(clause.head, vars, values));
            for (const Literal& l : clause.body) {
                AtomId id = out.intern(substitute(l.atom, vars, values));
                (l.positive ? gc.positive : gc.negative).push_back(id);
            }
            out.add_clause(std::move(gc));

            std::size_t k = vars.size();
            while (k > 0) {
                if (++digits[k - 1] < universe.size()) break;
                digits[k - 1] = 0;
                --k;
            }
            if (k == 0) break;
        }
    }
    return out;
}

LevelMapping check_acyclic(const GroundProgram& program) {
    const std::size_t n = program.size();
    std::vector<std::vector<AtomId>> deps(n); // head -> body atoms
    for (const GroundClause& c : program.clauses()) {
        auto& d = deps[c.head];
        d.insert(d.end(), c.positive.begin(), c.positive.end());
        d.insert(d.end(), c.negative.begin(), c.negative.end());
    }
    for (auto& d : deps) {
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
    }

    enum class Mark : char { fresh, active, done };
    std::vector<Mark> mark(n, Mark::fresh);
    LevelMapping levels{std::vector<int>(n, 1)};

    // Iterative DFS; the explicit stack doubles as the current path for cycle reports.
    struct Frame {
        AtomId atom;
        std::size_t next_dep;
    };
    std::vector<Frame> stack;
    for (AtomId root = 0; root < n; ++root) {
        if (mark[root] != Mark::fresh) continue;
        stack.push_back({root, 0});
        mark[root] = Mark::active;
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next_dep < deps[top.atom].size()) {
                AtomId dep = deps[top.atom][top.next_dep++];
                if (mark[dep] == Mark::active) {
                    std::vector<std::string> cycle;
                    auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) { return f.atom == dep; });
                    // Report the cycle in body -> head direction.
                    for (auto r = stack.end(); r != it;) {
                        --r;
                        cycle.push_back(to_string(program.atom(r->atom)));
                    }
                    std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
                    throw CycleError(std::move(cycle));
                }
                if (mark[dep] == Mark::fresh) {
                    mark[dep] = Mark::active;
                    stack.push_back({dep, 0});
                }
                continue;
            }
            int level = 1;
            for (AtomId d : deps[top.atom]) level = std::max(level, levels.level[d] + 1);
            levels.level[top.atom] = level;
            mark[top.atom] = Mark::done;
            stack.pop_back();
        }
    }
    return levels;
}

ModelEvaluator::ModelEvaluator(const GroundProgram& program)
    : num_atoms_(program.size()), rules_by_head_(program.size()) {
    const LevelMapping levels = check_acyclic(program);
    for (const GroundClause& c : program.clauses()) rules_by_head_[c.head].push_back(c);

    std::vector<std::string> names(num_atoms_);
    for (AtomId a = 0; a < num_atoms_; ++a) names[a] = to_string(program.atom(a));
    order_.resize(num_atoms_);
    std::iota(order_.begin(), order_.end(), AtomId{0});
    std::sort(order_.begin(), order_.end(), [&](AtomId x, AtomId y) {
        if (levels[x] != levels[y]) return levels[x] < levels[y];
        return names[x] < names[y];
    });
}

Interpretation ModelEvaluator::evaluate(std::span<const AtomId> facts) const {
    Interpretation model{std::vector<bool>(num_atoms_, false)};
    for (AtomId f : facts) {
        if (f >= num_atoms_) throw std::out_of_range("fact outside the Herbrand base");
        model.truth[f] = true;
    }
    for (AtomId a : order_) {
        if (model.truth[a]) continue;
        for (const GroundClause& rule : rules_by_head_[a]) {
            bool body = std::all_of(rule.positive.begin(), rule.positive.end(), [&](AtomId b) { return model.truth[b]; }) &&
                        std::none_of(rule.negative.begin(), rule.negative.end(), [&](AtomId b) { return model.truth[b]; });
            if (body) {
                model.truth[a] = true;
                break;
            }
        }
    }
    return model;
}

Interpretation stable_model(const GroundProgram& program, std::span<const AtomId> facts) {
    return ModelEvaluator(program).evaluate(facts);
}

Interpretation stable_model(const GroundProgram& program, const std::vector<Atom>& facts) {
    std::vector<AtomId> ids;
    ids.reserve(facts.size());
    for (const Atom& f : facts) {
        auto id = program.find(f);
        if (!id) throw std::invalid_argument("fact " + to_string(f) + " is not in the Herbrand base");
        ids.push_back(*id);
    }
    return stable_model(program, ids);
}

} // namespace ccl
