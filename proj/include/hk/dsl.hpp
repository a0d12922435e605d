#pragma once

#include "hk/rational.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hk {

struct SourcePos {
    int line = 1;
    int column = 1;
};

enum class TokenKind { Ident, Integer, Rational, Operator, Keyword, Punct, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string lexeme;
    SourcePos pos;
};

// Raised by the lexer and parser; always carries a position inside the
// input together with what was expected and what was found.
struct ParseError : std::runtime_error {
    SourcePos pos;
    std::string expected;
    std::string found;
    ParseError(SourcePos p, const std::string& exp, const std::string& fnd);
};

// Raised during elaboration (name resolution, typing, power rules).
struct ElabError : std::runtime_error {
    SourcePos pos;
    ElabError(SourcePos p, const std::string& message);
};

// Whole-input tokenization; the trailing token has kind End.
std::vector<Token> lex(const std::string& input);

// Expression tree. Children live in `children`; `signs` mirrors them for
// Sum nodes (+1/-1 per child).
struct Expr {
    enum class Kind { Number, Variable, Negate, Power, Product, Sum };
    Kind kind = Kind::Number;
    SourcePos pos;
    Rational value;           // Number
    std::string name;         // Variable (indexed references are normalized)
    long long exponent = 0;   // Power
    std::vector<Expr> children;
    std::vector<int> signs;   // Sum only
};

struct VarDecl {
    std::string name;
    int count = 0; // 0 = scalar; n >= 1 declares name1..name<n>
    int parity = 0;
    std::vector<long long> weight; // empty = all zero
    bool invertible = false;
    SourcePos pos;
};

struct PairDecl {
    std::string base, anti; // scalar or family base names
    SourcePos pos;
};

struct ChartStmt {
    std::string name;
    int gradings = 1;
    std::vector<VarDecl> vars;
    std::vector<PairDecl> pairs;
    SourcePos pos;
};

struct LetStmt {
    std::string name;
    Expr value;
    SourcePos pos;
};

struct UseStmt {
    std::string chart;
    SourcePos pos;
};

struct CommandStmt {
    std::string head;
    std::vector<Expr> args; // atom-level arguments
    std::string bind;       // "" when no "-> name" suffix
    SourcePos pos;
};

using Stmt = std::variant<ChartStmt, LetStmt, UseStmt, CommandStmt>;

struct SessionAst {
    std::vector<Stmt> statements;
};

// Recursive-descent parse of a whole session; throws ParseError on the
// first problem. Total: bounded nesting, no input hangs or crashes it.
SessionAst parse_session(const std::string& input);

// Parses a single expression that must consume the whole input.
Expr parse_expression(const std::string& input);

// Canonical text for an expression tree (parseable by parse_expression).
std::string expr_str(const Expr& e);

// Deterministic s-expression dump of a parsed session.
std::string ast_str(const SessionAst& ast);

} // namespace hk
