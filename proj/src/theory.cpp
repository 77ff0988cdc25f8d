#include "ccl/theory.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace ccl {

std::vector<Atom> ChoiceSpace::atomic_choices() const {
    std::vector<Atom> out;
    for (const Alternative& alt : alternatives)
        for (const Atom& a : alt.atoms)
            if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    return out;
}

Query parse_query(std::string_view text) { return Query{parse_literals(text)}; }

std::string to_string(const Query& query) {
    std::string out;
    for (std::size_t i = 0; i < query.literals.size(); ++i) {
        if (i) out += ", ";
        out += to_string(query.literals[i]);
    }
    return out;
}

std::set<std::string> Theory::constants() const {
    std::set<std::string> out = constants_of(program);
    for (const ChoiceSpace& space : spaces)
        for (const Alternative& alt : space.alternatives)
            for (const Atom& a : alt.atoms)
                for (const Term& t : a.args)
                    if (!t.is_variable()) out.insert(t.name);
    return out;
}

bool ValidationReport::has(Violation::Kind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

namespace {

std::string render(const Alternative& alt) {
    std::string out = "{";
    for (std::size_t i = 0; i < alt.atoms.size(); ++i) {
        if (i) out += ", ";
        out += to_string(alt.atoms[i]);
    }
    return out + "}";
}

/// Does the ground atom match the (possibly non-ground) head pattern?
bool unifies(const Atom& pattern, const Atom& ground) {
    if (pattern.relation != ground.relation || pattern.arity() != ground.arity()) return false;
    std::map<std::string, std::string> binding;
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
        const Term& p = pattern.args[i];
        const Term& g = ground.args[i];
        if (!p.is_variable()) {
            if (p.name != g.name) return false;
            continue;
        }
        auto [it, fresh] = binding.emplace(p.name, g.name);
        if (!fresh && it->second != g.name) return false;
    }
    return true;
}

std::string report_text(const ValidationReport& report) {
    std::string out = "invalid theory:";
    for (const Violation& v : report.violations) out += "\n  " + v.message;
    return out;
}

} // namespace

ValidationReport validate_theory(const Theory& theory) {
    using Kind = Violation::Kind;
    ValidationReport report;
    auto add = [&](Kind kind, std::string message) { report.violations.push_back({kind, std::move(message)}); };

    try {
        check_acyclic(ground(theory.program, theory.constants()));
    } catch (const CycleError& e) {
        add(Kind::cyclic_program, e.what());
    } catch (const std::invalid_argument& e) {
        add(Kind::cyclic_program, std::string("program cannot be grounded: ") + e.what());
    }

    for (std::size_t s = 0; s < theory.spaces.size(); ++s) {
        const ChoiceSpace& space = theory.spaces[s];
        for (const Alternative& alt : space.alternatives) {
            if (alt.atoms.empty()) {
                add(Kind::empty_alternative, "choice space " + std::to_string(s + 1) + " has an empty alternative");
                continue;
            }
            Rational sum = 0;
            bool sum_known = true;
            for (std::size_t i = 0; i < alt.atoms.size(); ++i) {
                const Atom& a = alt.atoms[i];
                if (!a.is_ground()) add(Kind::non_ground_choice, "atomic choice " + to_string(a) + " is not ground");
                if (std::find(alt.atoms.begin(), alt.atoms.begin() + static_cast<std::ptrdiff_t>(i), a) !=
                    alt.atoms.begin() + static_cast<std::ptrdiff_t>(i))
                    add(Kind::duplicate_choice, "alternative " + render(alt) + " lists " + to_string(a) + " twice");
                auto it = theory.mu.find(a);
                if (it == theory.mu.end()) {
                    add(Kind::missing_probability, "atomic choice " + to_string(a) + " has no probability");
                    sum_known = false;
                    continue;
                }
                if (it->second < 0 || it->second > 1)
                    add(Kind::probability_range,
                        "probability of " + to_string(a) + " is " + to_literal_string(it->second) + ", outside [0,1]");
                sum += it->second;
            }
            if (sum_known && sum != 1)
                add(Kind::mass_sum, "alternative " + render(alt) + " mass sum " + to_literal_string(sum) + " != 1");
        }

        for (const Atom& a : space.atomic_choices())
            for (const Clause& c : theory.program.clauses)
                if (unifies(c.head, a)) {
                    add(Kind::choice_heads_clause,
                        "atomic choice " + to_string(a) + " unifies with the head of clause '" + to_string(c) + "'");
                    break;
                }

        for (std::size_t t = s + 1; t < theory.spaces.size(); ++t) {
            const auto other = theory.spaces[t].atomic_choices();
            for (const Atom& a : space.atomic_choices())
                if (std::find(other.begin(), other.end(), a) != other.end())
                    add(Kind::shared_across_spaces, "atomic choice " + to_string(a) + " occurs in choice spaces " +
                                                        std::to_string(s + 1) + " and " + std::to_string(t + 1));
        }
    }
    return report;
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(report_text(report)), report_(std::move(report)) {}

Theory from_icl(Program program, std::vector<Alternative> alternatives, std::map<Atom, Rational> mu) {
    Theory theory;
    theory.program = std::move(program);
    theory.mu = std::move(mu);
    for (Alternative& alt : alternatives) theory.spaces.push_back(ChoiceSpace{{std::move(alt)}});
    if (auto report = validate_theory(theory); !report.ok()) throw ValidationError(std::move(report));
    return theory;
}

Theory merge_spaces(const Theory& theory, const std::set<std::size_t>& indices) {
    for (std::size_t i : indices)
        if (i >= theory.spaces.size())
            throw std::out_of_range("choice space index " + std::to_string(i) + " out of range (theory has " +
                                    std::to_string(theory.spaces.size()) + ")");
    if (indices.size() < 2) return theory;

    Theory out = theory;
    out.spaces.clear();
    const std::size_t anchor = *indices.begin();
    for (std::size_t i = 0; i < theory.spaces.size(); ++i) {
        if (i == anchor) {
            ChoiceSpace merged;
            for (std::size_t j : indices)
                merged.alternatives.insert(merged.alternatives.end(), theory.spaces[j].alternatives.begin(),
                                           theory.spaces[j].alternatives.end());
            out.spaces.push_back(std::move(merged));
        } else if (!indices.contains(i)) {
            out.spaces.push_back(theory.spaces[i]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// .ccl reader / writer
// ---------------------------------------------------------------------------

Theory parse_theory(std::string_view text) {
    using detail::Tok;
    detail::TokenStream in(detail::tokenize(text));
    detail::ArityTable arities;
    Theory theory;

    auto keyword = [&](const char* word, Tok follower) {
        return in.at(Tok::ident) && in.peek().text == word && in.peek(1).kind == follower;
    };

    while (!in.at(Tok::end)) {
        if (keyword("choicespace", Tok::lbrace)) {
            in.next();
            in.next();
            ChoiceSpace space;
            while (!in.accept(Tok::rbrace)) {
                if (!keyword("alternative", Tok::lbrace)) in.fail("expected 'alternative {' or '}'");
                in.next();
                in.next();
                Alternative alt;
                if (!in.at(Tok::rbrace)) {
                    do {
                        const detail::Token where = in.peek();
                        Atom atom = detail::read_atom(in, arities);
                        in.expect(Tok::colon);
                        const detail::Token& number = in.expect(Tok::number);
                        Rational p = parse_rational(number.text);
                        auto [it, fresh] = theory.mu.emplace(atom, p);
                        if (!fresh && it->second != p)
                            detail::TokenStream::fail_at(where, "conflicting probabilities for " + to_string(atom));
                        alt.atoms.push_back(std::move(atom));
                    } while (in.accept(Tok::comma));
                }
                in.expect(Tok::rbrace);
                space.alternatives.push_back(std::move(alt));
            }
            theory.spaces.push_back(std::move(space));
            continue;
        }
        if (in.at(Tok::ident) && in.peek().text == "query" &&
            (in.peek(1).kind == Tok::ident || in.peek(1).kind == Tok::naf)) {
            in.next();
            Query q;
            do {
                q.literals.push_back(detail::read_literal(in, arities));
            } while (in.accept(Tok::comma));
            in.expect(Tok::dot);
            theory.queries.push_back(std::move(q));
            continue;
        }
        theory.program.clauses.push_back(detail::read_clause(in, arities));
    }
    return theory;
}

std::string to_string(const Theory& theory) {
    std::string out = to_string(theory.program);
    for (const ChoiceSpace& space : theory.spaces) {
        out += "choicespace {\n";
        for (const Alternative& alt : space.alternatives) {
            out += "  alternative { ";
            for (std::size_t i = 0; i < alt.atoms.size(); ++i) {
                if (i) out += ", ";
                auto it = theory.mu.find(alt.atoms[i]);
                out += to_string(alt.atoms[i]) + ": " + (it == theory.mu.end() ? "0" : to_literal_string(it->second));
            }
            out += " }\n";
        }
        out += "}\n";
    }
    for (const Query& q : theory.queries) out += "query " + to_string(q) + ".\n";
    return out;
}

} // namespace ccl
