#include "metta/reader.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace metta {

namespace {

bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' ||
           c == ';' || c == '!';
}

// sign? digits ('.' digits)? ([eE] sign? digits)?
// Fraction or exponent present => Float, else Integer.
bool looks_like_number(std::string_view s, bool& is_float) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) return false;
    is_float = false;
    if (i < s.size() && s[i] == '.') {
        ++i;
        std::size_t frac = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++frac;
        if (frac == 0) return false;
        is_float = true;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t exp = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp;
        if (exp == 0) return false;
        is_float = true;
    }
    return i == s.size();
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (!eof()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            if (c == ';') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            SourceSpan span{line_, col_};
            if (c == '(') {
                advance();
                out.push_back({TokenKind::LParen, "(", "", span});
            } else if (c == ')') {
                advance();
                out.push_back({TokenKind::RParen, ")", "", span});
            } else if (c == '!') {
                advance();
                out.push_back({TokenKind::Bang, "!", "", span});
            } else if (c == '"') {
                out.push_back(lex_string(span));
            } else {
                out.push_back(lex_word(span));
            }
        }
        return out;
    }

private:
    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    Token lex_string(SourceSpan span) {
        std::size_t start = pos_;
        advance();  // opening quote
        std::string body;
        while (true) {
            if (eof()) throw ParseError("unterminated string literal", span);
            char c = peek();
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\' && pos_ + 1 < src_.size() &&
                (src_[pos_ + 1] == '"' || src_[pos_ + 1] == '\\')) {
                advance();
                body.push_back(peek());
                advance();
                continue;
            }
            body.push_back(c);
            advance();
        }
        return {TokenKind::String, std::string(src_.substr(start, pos_ - start)), body, span};
    }

    Token lex_word(SourceSpan span) {
        std::size_t start = pos_;
        while (!eof() && !is_delimiter(peek())) advance();
        std::string_view word = src_.substr(start, pos_ - start);
        if (word.size() > 1 && word.front() == '$')
            return {TokenKind::Variable, std::string(word), std::string(word.substr(1)), span};
        bool is_float = false;
        if (looks_like_number(word, is_float))
            return {TokenKind::Number, std::string(word), std::string(word), span};
        return {TokenKind::Symbol, std::string(word), std::string(word), span};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

Atom number_atom(const Token& t) {
    bool is_float = false;
    looks_like_number(t.lexeme, is_float);
    if (!is_float) {
        std::int64_t v = 0;
        const char* first = t.lexeme.data();
        if (!t.lexeme.empty() && t.lexeme.front() == '+') ++first;
        auto res = std::from_chars(first, t.lexeme.data() + t.lexeme.size(), v);
        if (res.ec == std::errc{}) return Atom::integer(v);
        // out of int64 range: fall back to Float
    }
    return Atom::floating(std::strtod(t.lexeme.c_str(), nullptr));
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    std::vector<ProgramItem> program() {
        std::vector<ProgramItem> items;
        while (pos_ < tokens_.size()) {
            SourceSpan span = tokens_[pos_].span;
            bool directive = false;
            if (tokens_[pos_].kind == TokenKind::Bang) {
                directive = true;
                ++pos_;
                if (pos_ >= tokens_.size())
                    throw ParseError("`!` not followed by a form", span);
            }
            items.push_back({form(), directive, span});
        }
        return items;
    }

    Atom form() {
        if (pos_ >= tokens_.size())
            throw ParseError("unexpected end of input", last_span());
        const Token& t = tokens_[pos_];
        switch (t.kind) {
            case TokenKind::LParen: {
                SourceSpan open = t.span;
                ++pos_;
                std::vector<Atom> children;
                while (true) {
                    if (pos_ >= tokens_.size())
                        throw ParseError("unbalanced parentheses: missing `)`", open);
                    if (tokens_[pos_].kind == TokenKind::RParen) {
                        ++pos_;
                        return Atom::expr(std::move(children));
                    }
                    children.push_back(form());
                }
            }
            case TokenKind::RParen:
                throw ParseError("unbalanced parentheses: unexpected `)`", t.span);
            case TokenKind::Bang:
                throw ParseError("`!` is only allowed before a top-level form", t.span);
            case TokenKind::Symbol:
                ++pos_;
                return Atom::sym(t.value);
            case TokenKind::Variable:
                ++pos_;
                return Atom::var(t.value);
            case TokenKind::String:
                ++pos_;
                return Atom::text(t.value);
            case TokenKind::Number:
                ++pos_;
                return number_atom(t);
        }
        throw ParseError("unrecognized token", t.span);
    }

    bool at_end() const { return pos_ >= tokens_.size(); }

    SourceSpan last_span() const {
        return tokens_.empty() ? SourceSpan{} : tokens_.back().span;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view src) { return Lexer(src).run(); }

std::vector<ProgramItem> parse_program(std::string_view src) {
    return Parser(tokenize(src)).program();
}

Atom parse_atom(std::string_view src) {
    Parser p(tokenize(src));
    Atom a = p.form();
    if (!p.at_end()) throw ParseError("trailing input after atom", p.last_span());
    return a;
}

std::string print_program(const std::vector<ProgramItem>& items) {
    std::string out;
    for (const auto& item : items) {
        if (item.is_directive) out += "! ";
        out += render(item.atom);
        out.push_back('\n');
    }
    return out;
}

}  // namespace metta
