#include "hk/dsl.hpp"

#include <sstream>
#include <utility>

namespace hk {

namespace {

constexpr int kMaxDepth = 200;

std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) return "end of input";
    return "'" + t.lexeme + "'";
}

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    SessionAst session() {
        SessionAst ast;
        while (!at_end()) ast.statements.push_back(statement());
        return ast;
    }

    Expr whole_expression() {
        Expr e = expression();
        if (!at_end()) fail("end of input");
        return e;
    }

  private:
    std::vector<Token> toks_;
    size_t idx_ = 0;
    int depth_ = 0;

    const Token& cur() const { return toks_[idx_]; }
    bool at_end() const { return cur().kind == TokenKind::End; }
    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(cur().pos, expected, describe(cur()));
    }
    bool at(TokenKind k, const char* lex = nullptr) const {
        return cur().kind == k && (!lex || cur().lexeme == lex);
    }
    Token take() { return toks_[idx_++]; }
    Token expect(TokenKind k, const char* lex, const char* what) {
        if (!at(k, lex)) fail(what);
        return take();
    }
    Token expect_ident(const char* what) {
        if (cur().kind != TokenKind::Ident) fail(what);
        return take();
    }

    long long integer_literal(const char* what) {
        if (cur().kind != TokenKind::Integer) fail(what);
        Token t = take();
        try {
            return std::stoll(t.lexeme);
        } catch (const std::exception&) {
            throw ParseError(t.pos, "a representable integer", "'" + t.lexeme + "'");
        }
    }

    long long signed_integer(const char* what) {
        bool neg = false;
        if (at(TokenKind::Operator, "-")) {
            take();
            neg = true;
        }
        long long v = integer_literal(what);
        return neg ? -v : v;
    }

    Rational rational_literal() {
        Token t = take(); // Integer or Rational
        const auto slash = t.lexeme.find('/');
        if (slash == std::string::npos) return Rational(t.lexeme);
        const std::string num = t.lexeme.substr(0, slash);
        const std::string den = t.lexeme.substr(slash + 1);
        Rational d(den);
        if (d == 0) throw ParseError(t.pos, "a nonzero denominator", "'" + t.lexeme + "'");
        return Rational(num) / d;
    }

    // --- statements ---

    Stmt statement() {
        if (at(TokenKind::Keyword, "chart")) return chart_statement();
        if (at(TokenKind::Keyword, "let")) return let_statement();
        if (at(TokenKind::Keyword, "use")) return use_statement();
        if (cur().kind == TokenKind::Ident) return command_statement();
        fail("a statement (chart, let, use, or a command)");
    }

    Stmt chart_statement() {
        ChartStmt st;
        st.pos = take().pos; // chart
        st.name = expect_ident("a chart name").lexeme;
        expect(TokenKind::Punct, "(", "'('");
        long long g = integer_literal("a grading count");
        st.gradings = static_cast<int>(g);
        expect(TokenKind::Punct, ")", "')'");
        expect(TokenKind::Punct, "{", "'{'");
        while (!at(TokenKind::Punct, "}")) {
            if (at(TokenKind::Keyword, "var")) {
                st.vars.push_back(var_decl());
            } else if (at(TokenKind::Keyword, "pair")) {
                st.pairs.push_back(pair_decl());
            } else {
                fail("'var', 'pair' or '}'");
            }
        }
        take(); // }
        expect(TokenKind::Punct, ";", "';'");
        return st;
    }

    VarDecl var_decl() {
        VarDecl v;
        v.pos = take().pos; // var
        v.name = expect_ident("a variable name").lexeme;
        if (at(TokenKind::Punct, "[")) {
            take();
            long long c = integer_literal("a family size");
            if (c < 1) throw ParseError(v.pos, "a positive family size", std::to_string(c));
            v.count = static_cast<int>(c);
            expect(TokenKind::Punct, "]", "']'");
        }
        expect(TokenKind::Punct, ":", "':'");
        if (at(TokenKind::Keyword, "even")) {
            take();
            v.parity = 0;
        } else if (at(TokenKind::Keyword, "odd")) {
            take();
            v.parity = 1;
        } else {
            fail("'even' or 'odd'");
        }
        while (at(TokenKind::Punct, ",")) {
            take();
            if (at(TokenKind::Keyword, "weight")) {
                take();
                expect(TokenKind::Punct, "(", "'('");
                v.weight.clear();
                v.weight.push_back(signed_integer("a weight component"));
                while (at(TokenKind::Punct, ",")) {
                    take();
                    v.weight.push_back(signed_integer("a weight component"));
                }
                expect(TokenKind::Punct, ")", "')'");
            } else if (at(TokenKind::Keyword, "invertible")) {
                take();
                v.invertible = true;
            } else {
                fail("'weight' or 'invertible'");
            }
        }
        expect(TokenKind::Punct, ";", "';'");
        return v;
    }

    PairDecl pair_decl() {
        PairDecl p;
        p.pos = take().pos; // pair
        expect(TokenKind::Punct, "(", "'('");
        p.base = expect_ident("a variable name").lexeme;
        expect(TokenKind::Punct, ",", "','");
        p.anti = expect_ident("a variable name").lexeme;
        expect(TokenKind::Punct, ")", "')'");
        expect(TokenKind::Punct, ";", "';'");
        return p;
    }

    Stmt let_statement() {
        LetStmt st;
        st.pos = take().pos; // let
        st.name = expect_ident("a binding name").lexeme;
        expect(TokenKind::Operator, "=", "'='");
        st.value = expression();
        expect(TokenKind::Punct, ";", "';'");
        return st;
    }

    Stmt use_statement() {
        UseStmt st;
        st.pos = take().pos; // use
        st.chart = expect_ident("a chart name").lexeme;
        expect(TokenKind::Punct, ";", "';'");
        return st;
    }

    Stmt command_statement() {
        CommandStmt st;
        st.pos = cur().pos;
        st.head = take().lexeme;
        while (starts_atom()) st.args.push_back(atom());
        if (at(TokenKind::Operator, "->")) {
            take();
            st.bind = expect_ident("a binding name").lexeme;
        }
        expect(TokenKind::Punct, ";", "';' (command arguments are atoms; parenthesize sums)");
        return st;
    }

    // --- expressions ---

    bool starts_atom() const {
        return cur().kind == TokenKind::Ident || cur().kind == TokenKind::Integer ||
               cur().kind == TokenKind::Rational || at(TokenKind::Punct, "(");
    }

    Expr expression() {
        if (++depth_ > kMaxDepth)
            throw ParseError(cur().pos, "a shallower expression", "nesting too deep");
        Expr first = term();
        if (at(TokenKind::Operator, "+") || at(TokenKind::Operator, "-")) {
            Expr sum;
            sum.kind = Expr::Kind::Sum;
            sum.pos = first.pos;
            sum.children.push_back(std::move(first));
            sum.signs.push_back(1);
            while (at(TokenKind::Operator, "+") || at(TokenKind::Operator, "-")) {
                const int sign = take().lexeme == "+" ? 1 : -1;
                sum.children.push_back(term());
                sum.signs.push_back(sign);
            }
            --depth_;
            return sum;
        }
        --depth_;
        return first;
    }

    Expr term() {
        Expr first = factor();
        if (at(TokenKind::Operator, "*")) {
            Expr prod;
            prod.kind = Expr::Kind::Product;
            prod.pos = first.pos;
            prod.children.push_back(std::move(first));
            while (at(TokenKind::Operator, "*")) {
                take();
                prod.children.push_back(factor());
            }
            return prod;
        }
        return first;
    }

    Expr factor() {
        bool neg = false;
        SourcePos negpos = cur().pos;
        if (at(TokenKind::Operator, "-")) {
            take();
            neg = true;
        }
        Expr base = atom();
        if (neg) {
            Expr n;
            n.kind = Expr::Kind::Negate;
            n.pos = negpos;
            n.children.push_back(std::move(base));
            base = std::move(n);
        }
        if (at(TokenKind::Operator, "^")) {
            Token caret = take();
            if (!(cur().kind == TokenKind::Integer || at(TokenKind::Operator, "-")))
                throw ParseError(cur().pos, "an integer exponent", describe(cur()));
            long long e = signed_integer("an integer exponent");
            Expr p;
            p.kind = Expr::Kind::Power;
            p.pos = caret.pos;
            p.exponent = e;
            p.children.push_back(std::move(base));
            return p;
        }
        return base;
    }

    Expr atom() {
        if (++depth_ > kMaxDepth)
            throw ParseError(cur().pos, "a shallower expression", "nesting too deep");
        Expr e;
        e.pos = cur().pos;
        if (cur().kind == TokenKind::Integer || cur().kind == TokenKind::Rational) {
            e.kind = Expr::Kind::Number;
            e.value = rational_literal();
        } else if (cur().kind == TokenKind::Ident) {
            e.kind = Expr::Kind::Variable;
            e.name = take().lexeme;
            if (at(TokenKind::Punct, "[")) {
                take();
                long long ix = integer_literal("a variable index");
                expect(TokenKind::Punct, "]", "']'");
                e.name += std::to_string(ix);
            }
        } else if (at(TokenKind::Punct, "(")) {
            take();
            e = expression();
            expect(TokenKind::Punct, ")", "')'");
        } else {
            fail("a number, a variable, or '('");
        }
        --depth_;
        return e;
    }
};

void sexp(const Expr& e, std::ostringstream& os) {
    switch (e.kind) {
    case Expr::Kind::Number:
        os << "(num " << e.value.str() << ")";
        break;
    case Expr::Kind::Variable:
        os << "(var " << e.name << ")";
        break;
    case Expr::Kind::Negate:
        os << "(neg ";
        sexp(e.children[0], os);
        os << ")";
        break;
    case Expr::Kind::Power:
        os << "(pow ";
        sexp(e.children[0], os);
        os << " " << e.exponent << ")";
        break;
    case Expr::Kind::Product:
        os << "(mul";
        for (const Expr& c : e.children) {
            os << " ";
            sexp(c, os);
        }
        os << ")";
        break;
    case Expr::Kind::Sum:
        os << "(add";
        for (size_t i = 0; i < e.children.size(); ++i) {
            os << (e.signs[i] > 0 ? " (+ " : " (- ");
            sexp(e.children[i], os);
            os << ")";
        }
        os << ")";
        break;
    }
}

void print_infix(const Expr& e, std::ostringstream& os) {
    switch (e.kind) {
    case Expr::Kind::Number:
        os << e.value.str();
        break;
    case Expr::Kind::Variable:
        os << e.name;
        break;
    case Expr::Kind::Negate: {
        // Anything but a bare leaf gets brackets: "--x" does not parse, a
        // power would rebind the minus to its base, and a product or sum
        // could itself start with a minus.
        const Expr::Kind k = e.children[0].kind;
        const bool wrap = !(k == Expr::Kind::Number || k == Expr::Kind::Variable);
        os << "-";
        if (wrap) os << "(";
        print_infix(e.children[0], os);
        if (wrap) os << ")";
        break;
    }
    case Expr::Kind::Power: {
        const Expr& b = e.children[0];
        const bool wrap = !(b.kind == Expr::Kind::Variable || b.kind == Expr::Kind::Number ||
                            b.kind == Expr::Kind::Negate);
        if (wrap) os << "(";
        print_infix(b, os);
        if (wrap) os << ")";
        os << "^" << e.exponent;
        break;
    }
    case Expr::Kind::Product:
        for (size_t i = 0; i < e.children.size(); ++i) {
            if (i) os << "*";
            const bool wrap = e.children[i].kind == Expr::Kind::Sum;
            if (wrap) os << "(";
            print_infix(e.children[i], os);
            if (wrap) os << ")";
        }
        break;
    case Expr::Kind::Sum:
        for (size_t i = 0; i < e.children.size(); ++i) {
            if (i) os << (e.signs[i] > 0 ? " + " : " - ");
            const bool wrap = e.children[i].kind == Expr::Kind::Sum;
            if (wrap) os << "(";
            print_infix(e.children[i], os);
            if (wrap) os << ")";
        }
        break;
    }
}

} // namespace

SessionAst parse_session(const std::string& input) {
    Parser p(lex(input));
    return p.session();
}

Expr parse_expression(const std::string& input) {
    Parser p(lex(input));
    return p.whole_expression();
}

std::string expr_str(const Expr& e) {
    std::ostringstream os;
    print_infix(e, os);
    return os.str();
}

std::string ast_str(const SessionAst& ast) {
    std::ostringstream os;
    os << "(session";
    for (const Stmt& s : ast.statements) {
        os << "\n  ";
        if (const auto* c = std::get_if<ChartStmt>(&s)) {
            os << "(chart " << c->name << " " << c->gradings;
            for (const VarDecl& v : c->vars) {
                os << "\n    (var " << v.name;
                if (v.count > 0) os << "[" << v.count << "]";
                os << (v.parity ? " odd" : " even");
                os << " (";
                for (size_t i = 0; i < v.weight.size(); ++i) {
                    if (i) os << " ";
                    os << v.weight[i];
                }
                os << ")";
                if (v.invertible) os << " invertible";
                os << ")";
            }
            for (const PairDecl& pr : c->pairs)
                os << "\n    (pair " << pr.base << " " << pr.anti << ")";
            os << ")";
        } else if (const auto* l = std::get_if<LetStmt>(&s)) {
            os << "(let " << l->name << " ";
            sexp(l->value, os);
            os << ")";
        } else if (const auto* u = std::get_if<UseStmt>(&s)) {
            os << "(use " << u->chart << ")";
        } else if (const auto* m = std::get_if<CommandStmt>(&s)) {
            os << "(command " << m->head;
            for (const Expr& a : m->args) {
                os << " ";
                sexp(a, os);
            }
            if (!m->bind.empty()) os << " (bind " << m->bind << ")";
            os << ")";
        }
    }
    os << ")\n";
    return os.str();
}

} // namespace hk
