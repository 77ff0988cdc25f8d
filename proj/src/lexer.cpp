#include "lexer.hpp"

#include <algorithm>
#include <cctype>

namespace ccl::detail {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    int column = 1;
    std::size_t i = 0;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    auto push = [&](Tok kind, std::size_t len) {
        out.push_back({kind, std::string(text.substr(i, len)), line, column});
        advance(len);
    };

    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (i + len < text.size() && is_word_char(text[i + len])) ++len;
            push(std::islower(static_cast<unsigned char>(c)) ? Tok::ident : Tok::variable, len);
            continue;
        }
        bool starts_number = std::isdigit(static_cast<unsigned char>(c)) ||
                             (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])));
        if (starts_number) {
            std::size_t len = 0;
            auto digits = [&] {
                while (i + len < text.size() && std::isdigit(static_cast<unsigned char>(text[i + len]))) ++len;
            };
            digits();
            if (i + len + 1 < text.size() && text[i + len] == '.' &&
                std::isdigit(static_cast<unsigned char>(text[i + len + 1]))) {
                ++len;
                digits();
            } else if (i + len < text.size() && text[i + len] == '.' && len == 0) {
                ++len;
                digits();
            }
            if (i + len + 1 < text.size() && text[i + len] == '/' &&
                std::isdigit(static_cast<unsigned char>(text[i + len + 1]))) {
                ++len;
                digits();
            }
            push(Tok::number, len);
            continue;
        }
        if (text.substr(i, 2) == ":-") {
            push(Tok::neck, 2);
            continue;
        }
        if (text.substr(i, 2) == "\\+") {
            push(Tok::naf, 2);
            continue;
        }
        if (text.substr(i, 2) == "\xC2\xAC") { // U+00AC NOT SIGN
            push(Tok::naf, 2);
            continue;
        }
        switch (c) {
        case '(': push(Tok::lparen, 1); continue;
        case ')': push(Tok::rparen, 1); continue;
        case '{': push(Tok::lbrace, 1); continue;
        case '}': push(Tok::rbrace, 1); continue;
        case ',': push(Tok::comma, 1); continue;
        case '.': push(Tok::dot, 1); continue;
        case ':': push(Tok::colon, 1); continue;
        default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
    out.push_back({Tok::end, "", line, column});
    return out;
}

const char* describe(Tok kind) {
    switch (kind) {
    case Tok::ident: return "identifier";
    case Tok::variable: return "variable";
    case Tok::number: return "number";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::colon: return "':'";
    case Tok::neck: return "':-'";
    case Tok::naf: return "'\\+'";
    case Tok::end: return "end of input";
    }
    return "?";
}

const Token& TokenStream::expect(Tok kind) {
    if (!at(kind)) {
        const Token& t = peek();
        fail_at(t, std::string("expected ") + describe(kind) + ", found " +
                       (t.kind == Tok::end ? std::string(describe(t.kind)) : "'" + t.text + "'"));
    }
    return next();
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& token, const std::string& message) {
    throw ParseError(message, token.line, token.column);
}

void ArityTable::check(const Atom& atom, const Token& where) {
    auto it = std::find_if(seen_.begin(), seen_.end(), [&](const auto& e) { return e.first == atom.relation; });
    if (it == seen_.end()) {
        seen_.emplace_back(atom.relation, atom.arity());
        return;
    }
    if (it->second != atom.arity())
        throw ArityError("relation '" + atom.relation + "' used with arity " + std::to_string(atom.arity()) +
                             " but earlier with arity " + std::to_string(it->second),
                         where.line, where.column);
}

Atom read_atom(TokenStream& in, ArityTable& arities) {
    const Token& name = in.expect(Tok::ident);
    Atom atom(name.text);
    if (in.accept(Tok::lparen)) {
        do {
            const Token& t = in.peek();
            if (t.kind == Tok::ident)
                atom.args.push_back(Term::constant(t.text));
            else if (t.kind == Tok::variable)
                atom.args.push_back(Term::variable(t.text));
            else
                in.fail("expected a constant or variable argument");
            in.next();
        } while (in.accept(Tok::comma));
        in.expect(Tok::rparen);
    }
    arities.check(atom, name);
    return atom;
}

Literal read_literal(TokenStream& in, ArityTable& arities) {
    bool positive = !in.accept(Tok::naf);
    return {read_atom(in, arities), positive};
}

Clause read_clause(TokenStream& in, ArityTable& arities) {
    const Token head_token = in.peek();
    Clause clause;
    clause.head = read_atom(in, arities);
    if (in.accept(Tok::neck)) {
        do {
            clause.body.push_back(read_literal(in, arities));
        } while (in.accept(Tok::comma));
    }
    in.expect(Tok::dot);

    for (const Term& t : clause.head.args) {
        if (!t.is_variable()) continue;
        bool bound = std::any_of(clause.body.begin(), clause.body.end(), [&](const Literal& l) {
            return std::find(l.atom.args.begin(), l.atom.args.end(), t) != l.atom.args.end();
        });
        if (!bound)
            TokenStream::fail_at(head_token, "head variable '" + t.name + "' does not occur in the body");
    }
    return clause;
}

} // namespace ccl::detail
