#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metta/atom.hpp"

namespace metta {

struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
};

enum class TokenKind { LParen, RParen, Bang, Symbol, Variable, String, Number };

struct Token {
    TokenKind kind;
    std::string lexeme;  // exact source slice
    std::string value;   // decoded payload (string body, variable name)
    SourceSpan span;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, SourceSpan span)
        : std::runtime_error(msg + " at " + std::to_string(span.line) + ":" +
                             std::to_string(span.column)),
          span_(span) {}
    SourceSpan span() const { return span_; }

private:
    SourceSpan span_;
};

// One top-level form. Directive items (prefixed by `!` in source) are
// evaluated; non-directive items are stored in the space.
struct ProgramItem {
    Atom atom;
    bool is_directive = false;
    SourceSpan span;
};

// Lex MeTTa source. Comments start with `;` and run to end of line.
// Throws ParseError on an unterminated string literal.
std::vector<Token> tokenize(std::string_view src);

// Parse a whole program: one ProgramItem per top-level form, in source
// order. Number and string literals become grounded atoms; `$name`
// tokens become variables (scope 0). Throws ParseError on unbalanced
// parentheses or a `!` not followed by a form.
std::vector<ProgramItem> parse_program(std::string_view src);

// Parse a single atom; throws if the source holds none or more than one.
Atom parse_atom(std::string_view src);

// Inverse of parse_program modulo spans: one form per line, directives
// prefixed with "! ".
std::string print_program(const std::vector<ProgramItem>& items);

}  // namespace metta
