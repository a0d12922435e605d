#include "hk/dsl.hpp"

#include <cctype>
#include <set>

namespace hk {

ParseError::ParseError(SourcePos p, const std::string& exp, const std::string& fnd)
    : std::runtime_error("expected " + exp + ", found " + fnd + " at " +
                         std::to_string(p.line) + ":" + std::to_string(p.column)),
      pos(p), expected(exp), found(fnd) {}

ElabError::ElabError(SourcePos p, const std::string& message)
    : std::runtime_error(message + " at " + std::to_string(p.line) + ":" +
                         std::to_string(p.column)),
      pos(p) {}

namespace {

const std::set<std::string>& keywords() {
    static const std::set<std::string> kw = {"chart", "let",    "use",        "var",
                                             "pair",  "even",   "odd",        "weight",
                                             "invertible"};
    return kw;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

} // namespace

std::vector<Token> lex(const std::string& input) {
    std::vector<Token> out;
    SourcePos pos;
    size_t i = 0;
    const size_t n = input.size();
    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (input[i + j] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
        }
        i += k;
    };
    while (i < n) {
        const char c = input[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            size_t j = i;
            while (j < n && input[j] != '\n') ++j;
            advance(j - i);
            continue;
        }
        const SourcePos start = pos;
        if (ident_start(c)) {
            size_t j = i;
            while (j < n && ident_char(input[j])) ++j;
            std::string word = input.substr(i, j - i);
            advance(j - i);
            TokenKind kind = keywords().count(word) ? TokenKind::Keyword : TokenKind::Ident;
            out.push_back({kind, std::move(word), start});
            continue;
        }
        if (digit(c)) {
            size_t j = i;
            while (j < n && digit(input[j])) ++j;
            // A slash immediately followed by digits extends the literal to
            // an exact fraction.
            if (j + 1 < n && input[j] == '/' && digit(input[j + 1])) {
                size_t k = j + 1;
                while (k < n && digit(input[k])) ++k;
                std::string lit = input.substr(i, k - i);
                advance(k - i);
                out.push_back({TokenKind::Rational, std::move(lit), start});
            } else {
                std::string lit = input.substr(i, j - i);
                advance(j - i);
                out.push_back({TokenKind::Integer, std::move(lit), start});
            }
            continue;
        }
        if (c == '-' && i + 1 < n && input[i + 1] == '>') {
            advance(2);
            out.push_back({TokenKind::Operator, "->", start});
            continue;
        }
        if (c == '+' || c == '-' || c == '*' || c == '^' || c == '=') {
            advance(1);
            out.push_back({TokenKind::Operator, std::string(1, c), start});
            continue;
        }
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ':' ||
            c == ',' || c == ';') {
            advance(1);
            out.push_back({TokenKind::Punct, std::string(1, c), start});
            continue;
        }
        throw ParseError(start, "a token", "character '" + std::string(1, c) + "'");
    }
    out.push_back({TokenKind::End, "", pos});
    return out;
}

} // namespace hk
