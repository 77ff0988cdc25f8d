#pragma once

// Tokenizer shared by the program, query and theory readers.

#include <string>
#include <string_view>
#include <vector>

#include "ccl/logic.hpp"

namespace ccl::detail {

enum class Tok {
    ident,    // [a-z][A-Za-z0-9_]*
    variable, // [A-Z][A-Za-z0-9_]*
    number,   // 12, 0.35, .5, 1/3
    lparen,
    rparen,
    lbrace,
    rbrace,
    comma,
    dot,
    colon,
    neck, // :-
    naf,  // \+ or ¬
    end,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view text);
const char* describe(Tok kind);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool at(Tok kind) const { return peek().kind == kind; }
    bool accept(Tok kind) {
        if (!at(kind)) return false;
        next();
        return true;
    }
    const Token& expect(Tok kind);

    [[noreturn]] void fail(const std::string& message) const;
    [[noreturn]] static void fail_at(const Token& token, const std::string& message);

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

/// Tracks relation arities across everything read from one source.
class ArityTable {
public:
    void check(const Atom& atom, const Token& where);

private:
    std::vector<std::pair<std::string, std::size_t>> seen_;
};

Atom read_atom(TokenStream& in, ArityTable& arities);
Literal read_literal(TokenStream& in, ArityTable& arities);
/// head [:- body] '.' with range restriction on head variables.
Clause read_clause(TokenStream& in, ArityTable& arities);

} // namespace ccl::detail
