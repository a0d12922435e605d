#include "hk/session.hpp"

#include "hk/algebroid.hpp"
#include "hk/bv.hpp"
#include "hk/diffop.hpp"
#include "hk/kirillov.hpp"
#include "hk/lie.hpp"
#include "hk/schouten.hpp"

#include <nlohmann/json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <functional>
#include <sstream>

namespace hk {

namespace {

constexpr size_t kMonomialPool = 12; // spanning monomials fed to bracket sweeps
constexpr size_t kTupleCap = 200;    // argument tuples per bracket sweep

std::string first_term(const Poly& p) {
    if (p.is_zero()) return "0";
    Poly t(p.chart());
    auto it = p.terms().begin();
    t.add_term(it->first, it->second);
    return t.str();
}

std::string render_matrix(const std::vector<std::vector<Rational>>& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) os << ", ";
        os << "[";
        for (size_t j = 0; j < m[i].size(); ++j) {
            if (j) os << ", ";
            os << m[i][j].str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

// Nonzero monomials of total degree <= degree over nonnegative exponents,
// in a fixed enumeration order, capped.
std::vector<Poly> spanning_monomials(const ChartPtr& K, int degree, size_t cap) {
    std::vector<Poly> out;
    Monomial m;
    m.e.assign(static_cast<size_t>(K->size()), 0);
    std::function<void(int, int)> go = [&](int idx, int remaining) {
        if (out.size() >= cap) return;
        if (idx == K->size()) {
            if (std::any_of(m.e.begin(), m.e.end(), [](int16_t e) { return e != 0; })) {
                Poly p(K);
                p.add_term(m, Rational(1));
                out.push_back(std::move(p));
            }
            return;
        }
        const int cap_e = K->var(idx).parity ? 1 : remaining;
        for (int e = 0; e <= std::min(cap_e, remaining); ++e) {
            m.e[static_cast<size_t>(idx)] = static_cast<int16_t>(e);
            go(idx + 1, remaining - e);
            if (out.size() >= cap) break;
        }
        m.e[static_cast<size_t>(idx)] = 0;
    };
    go(0, degree);
    return out;
}

// Sweeps non-decreasing index tuples (the brackets are antisymmetric up to
// sign, so combinations with repetition suffice) and reports the first
// nonzero bracket value.
bool bracket_vanishing(const DiffOperator& L, int arity, const std::vector<Poly>& pool,
                       size_t tuple_cap, std::string& witness) {
    if (pool.empty() || arity <= 0) return true;
    std::vector<size_t> idx(static_cast<size_t>(arity), 0);
    for (size_t count = 0; count < tuple_cap; ++count) {
        std::vector<Poly> args;
        args.reserve(idx.size());
        for (size_t i : idx) args.push_back(pool[i]);
        Poly v = bv_bracket(L, args);
        if (!v.is_zero()) {
            witness = v.str();
            return false;
        }
        int pos = arity - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == pool.size() - 1) --pos;
        if (pos < 0) break;
        const size_t next = idx[static_cast<size_t>(pos)] + 1;
        for (int q = pos; q < arity; ++q) idx[static_cast<size_t>(q)] = next;
    }
    return true;
}

std::string command_echo(const CommandStmt& c) {
    std::string s = c.head;
    for (const Expr& a : c.args) s += " " + expr_str(a);
    if (!c.bind.empty()) s += " -> " + c.bind;
    return s;
}

class Executor {
  public:
    explicit Executor(const SessionConfig& cfg) : cfg_(cfg) {}

    SessionResult run(const SessionAst& ast) {
#ifdef _OPENMP
        if (cfg_.jobs > 0) omp_set_num_threads(cfg_.jobs);
#endif
        for (const Stmt& st : ast.statements) {
            const std::string echo = echo_of(st);
            const size_t before = result_.records.size();
            try {
                std::visit([&](const auto& s) { exec(s); }, st);
            } catch (const std::exception& e) {
                result_.records.resize(before); // drop the partial record, if any
                CommandRecord rec;
                rec.command = echo;
                rec.status = "error";
                rec.detail = e.what();
                result_.records.push_back(std::move(rec));
                any_error_ = true;
                break; // a hard error poisons everything after it
            }
        }
        if (!cfg_.only.empty()) {
            // Focused run: everything executes (bindings stay usable), but the
            // report keeps only matching commands, plus any error record.
            std::vector<CommandRecord> kept;
            bool fail = false;
            for (CommandRecord& rec : result_.records) {
                const std::string head = rec.command.substr(0, rec.command.find(' '));
                if (rec.status == "error" || head == cfg_.only) {
                    fail = fail || rec.status == "fail";
                    kept.push_back(std::move(rec));
                }
            }
            result_.records = std::move(kept);
            any_fail_ = fail;
        }
        result_.exit_code = any_error_ ? 2 : (any_fail_ ? 1 : 0);
        return std::move(result_);
    }

  private:
    static std::string echo_of(const Stmt& st) {
        if (const auto* c = std::get_if<ChartStmt>(&st)) return "chart " + c->name;
        if (const auto* l = std::get_if<LetStmt>(&st)) return "let " + l->name;
        if (const auto* u = std::get_if<UseStmt>(&st)) return "use " + u->chart;
        return command_echo(std::get<CommandStmt>(st));
    }

    CommandRecord& open(std::string command) {
        CommandRecord rec;
        rec.command = std::move(command);
        rec.status = "ok";
        result_.records.push_back(std::move(rec));
        return result_.records.back();
    }

    void set_fail(CommandRecord& rec, std::string witness) {
        rec.status = "fail";
        rec.detail = std::move(witness);
        any_fail_ = true;
    }

    Poly arg_poly(const Expr& e) { return elaborate_expr(e, active_, bindings_); }

    std::vector<Poly> arg_polys(const CommandStmt& c, size_t from, size_t upto) {
        std::vector<Poly> out;
        for (size_t i = from; i < upto; ++i) out.push_back(arg_poly(c.args[i]));
        return out;
    }

    static const std::string& atom_name(const CommandStmt& c, size_t i,
                                        const std::string& what) {
        if (i >= c.args.size() || c.args[i].kind != Expr::Kind::Variable)
            throw ElabError(c.pos, "expected " + what);
        return c.args[i].name;
    }

    static bool is_integer_atom(const Expr& e) {
        return e.kind == Expr::Kind::Number && denominator(e.value) == 1;
    }

    void need(const CommandStmt& c, bool ok, const std::string& usage) {
        if (!ok) throw ElabError(c.pos, "usage: " + usage);
    }

    void bind_value(const CommandStmt& c, const Poly& v, const char* fallback = nullptr) {
        const std::string name = !c.bind.empty() ? c.bind : (fallback ? fallback : "");
        if (!name.empty()) bindings_[name] = v;
    }

    StructureConstants load_constants() const {
        if (!cfg_.structure_constants.empty())
            return StructureConstants::from_json_file(cfg_.structure_constants);
        StructureConstants S(3); // rotation algebra: [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
        S.set(2, 0, 1, Rational(1));
        S.set(1, 0, 2, Rational(-1));
        S.set(0, 1, 2, Rational(1));
        return S;
    }

    void exec(const ChartStmt& st) {
        if (charts_.count(st.name))
            throw ElabError(st.pos, "chart '" + st.name + "' is already defined");
        ChartPtr c = elaborate_chart(st);
        charts_[st.name] = c;
        active_ = c;
        CommandRecord& rec = open("chart " + st.name);
        rec.values.emplace_back("gradings", std::to_string(c->gradings()));
        rec.values.emplace_back("variables", std::to_string(c->size()));
    }

    void exec(const UseStmt& st) {
        auto it = charts_.find(st.chart);
        if (it == charts_.end()) throw ElabError(st.pos, "unknown chart '" + st.chart + "'");
        active_ = it->second;
        open("use " + st.chart);
    }

    void exec(const LetStmt& st) {
        Poly v = elaborate_expr(st.value, active_, bindings_);
        bindings_[st.name] = v;
        CommandRecord& rec = open("let " + st.name);
        rec.values.emplace_back("value", v.str());
    }

    void exec(const CommandStmt& c) {
        CommandRecord& rec = open(command_echo(c));
        if (c.head == "master") {
            cmd_master(c, rec);
        } else if (c.head == "schouten") {
            need(c, c.args.size() == 2, "schouten F G [-> R]");
            Poly r = schouten(arg_poly(c.args[0]), arg_poly(c.args[1]));
            rec.values.emplace_back("value", r.str());
            bind_value(c, r);
        } else if (c.head == "derived") {
            need(c, c.args.size() >= 1, "derived D f1 ... fn [-> R]");
            Poly r = derived_bracket(arg_poly(c.args[0]), arg_polys(c, 1, c.args.size()));
            rec.values.emplace_back("value", r.str());
            bind_value(c, r);
        } else if (c.head == "skew") {
            need(c, c.args.size() >= 1, "skew D f1 ... fn [-> R]");
            Poly r = skew_bracket(arg_poly(c.args[0]), arg_polys(c, 1, c.args.size()));
            rec.values.emplace_back("value", r.str());
            bind_value(c, r);
        } else if (c.head == "jacobiator") {
            need(c, c.args.size() >= 1, "jacobiator D f1 ... fn");
            JacobiatorReport rep =
                jacobiator(arg_poly(c.args[0]), arg_polys(c, 1, c.args.size()));
            rec.values.emplace_back("expansion", rep.expansion.str());
            rec.values.emplace_back("direct", rep.direct.str());
            if (!rep.match) set_fail(rec, "expansion and direct routes disagree");
        } else if (c.head == "check") {
            cmd_check(c, rec);
        } else if (c.head == "bracket") {
            need(c, c.args.size() >= 2, "bracket P s1 ... sr [-> R]");
            Poly r = kirillov_bracket(arg_poly(c.args[0]), arg_polys(c, 1, c.args.size()));
            rec.values.emplace_back("value", r.str());
            bind_value(c, r);
        } else if (c.head == "anchor") {
            need(c, c.args.size() >= 2, "anchor P s1 ... sr f [-> R]");
            Poly r = kirillov_anchor(arg_poly(c.args[0]),
                                     arg_polys(c, 1, c.args.size() - 1),
                                     arg_poly(c.args.back()));
            rec.values.emplace_back("value", r.str());
            bind_value(c, r);
        } else if (c.head == "poissonise") {
            need(c, c.args.size() == 2, "poissonise F K [-> P]");
            Poly F = arg_poly(c.args[0]);
            const std::string& target = atom_name(c, 1, "a chart name");
            auto it = charts_.find(target);
            if (it == charts_.end())
                throw ElabError(c.pos, "unknown chart '" + target + "'");
            Poly r = poissonise(F, it->second);
            rec.values.emplace_back("value", r.str());
            bind_value(c, r, "P");
            active_ = it->second;
        } else if (c.head == "bv") {
            cmd_bv(c, rec);
        } else if (c.head == "closure") {
            cmd_closure(c, rec);
        } else if (c.head == "qlift") {
            need(c, c.args.size() == 1, "qlift Q [-> P]");
            Poly r = q_lift(arg_poly(c.args[0]));
            rec.values.emplace_back("value", r.str());
            bind_value(c, r, "P");
        } else if (c.head == "lie") {
            cmd_lie(c, rec);
        } else {
            throw ElabError(c.pos, "unknown command '" + c.head + "'");
        }
    }

    void cmd_master(const CommandStmt& c, CommandRecord& rec) {
        need(c, c.args.size() == 1, "master P [-> R]");
        MasterReport rep = check_master(arg_poly(c.args[0]));
        rec.values.emplace_back("bracket", rep.bracket.str());
        if (!rep.ok) set_fail(rec, first_term(rep.bracket));
        bind_value(c, rep.bracket);
    }

    void cmd_check(const CommandStmt& c, CommandRecord& rec) {
        need(c, c.args.size() == 2, "check kirillov|algebroid P");
        const std::string& kind = atom_name(c, 0, "'kirillov' or 'algebroid'");
        Poly P = arg_poly(c.args[1]);
        if (kind == "kirillov") {
            KirillovReport rep = validate_kirillov(P);
            if (rep.ok) {
                rec.values.emplace_back("order", std::to_string(rep.order));
            } else {
                rec.values.emplace_back("failed", rep.failed);
                set_fail(rec, rep.witness);
            }
        } else if (kind == "algebroid") {
            AlgebroidReport rep = validate_algebroid(P);
            if (rep.ok) {
                rec.values.emplace_back("order", std::to_string(rep.order));
            } else {
                rec.values.emplace_back("failed", rep.failed);
                set_fail(rec, rep.witness);
            }
        } else {
            throw ElabError(c.pos, "unknown check '" + kind + "'");
        }
    }

    void cmd_bv(const CommandStmt& c, CommandRecord& rec) {
        need(c, c.args.size() == 1, "bv P");
        Poly P = arg_poly(c.args[0]);
        ChartPtr FT = form_chart(P.chart());
        DiffOperator L = koszul_brylinski(P, FT);
        BvReport br = bv_check(L);
        const int ord = L.order();
        rec.values.emplace_back("odd", br.odd ? "true" : "false");
        rec.values.emplace_back("nilpotent", br.nilpotent ? "true" : "false");
        rec.values.emplace_back("order", std::to_string(ord));
        if (!br.odd) {
            set_fail(rec, "generator is not odd");
            return;
        }
        if (!br.nilpotent) {
            set_fail(rec, "generator does not square to zero");
            return;
        }
        if (ord >= 0) {
            std::string witness;
            const auto pool = spanning_monomials(FT, cfg_.degree, kMonomialPool);
            const bool vanish = bracket_vanishing(L, ord + 1, pool, kTupleCap, witness);
            rec.values.emplace_back("higher_vanishing", vanish ? "true" : "false");
            if (!vanish) set_fail(rec, witness);
        }
    }

    void cmd_closure(const CommandStmt& c, CommandRecord& rec) {
        need(c, c.args.size() >= 2, "closure P [N] b1 ... bk");
        Poly P = arg_poly(c.args[0]);
        size_t from = 1;
        int cap = cfg_.arity;
        if (is_integer_atom(c.args[1])) {
            const Rational& v = c.args[1].value;
            if (v < 0 || v > 16) throw ElabError(c.pos, "closure arity cap out of range 0..16");
            cap = static_cast<int>(numerator(v).convert_to<long long>());
            from = 2;
        }
        need(c, c.args.size() > from, "closure P [N] b1 ... bk");
        ChartPtr FT = form_chart(P.chart());
        // Basis members live in the form algebra, so their names resolve there.
        std::vector<Poly> basis;
        for (size_t i = from; i < c.args.size(); ++i)
            basis.push_back(elaborate_expr(c.args[i], FT, bindings_));
        DiffOperator L = koszul_brylinski(P, FT);
        rec.values.emplace_back("arity_cap", std::to_string(cap));
        for (int r = 1; r <= cap; ++r) {
            ClosureReport rep = invariant_closure_check(L, basis, r);
            if (!rep.ok()) {
                rec.values.emplace_back("failed_arity", std::to_string(r));
                set_fail(rec, rep.witness);
                return;
            }
        }
    }

    void cmd_lie(const CommandStmt& c, CommandRecord& rec) {
        need(c, c.args.size() == 1, "lie jacobi|killing|cocycle3|jacobi4|algebroid [-> R]");
        const std::string& sub = atom_name(c, 0, "a lie subcommand");
        StructureConstants S = load_constants();
        const int n = S.dim();
        rec.values.emplace_back("dim", std::to_string(n));
        if (sub == "jacobi") {
            if (!jacobi_check(S)) {
                Poly L = linear_structure(S);
                set_fail(rec, first_term(schouten(L, L)));
            }
        } else if (sub == "killing") {
            rec.values.emplace_back("matrix", render_matrix(killing_form(S)));
        } else if (sub == "cocycle3") {
            Poly C = cartan_cubic(S);
            rec.values.emplace_back("value", C.str());
            Poly residue = schouten(linear_structure(S), C);
            if (!residue.is_zero()) set_fail(rec, first_term(residue));
            bind_value(c, C, "C");
            active_ = ce_chart(n);
        } else if (sub == "jacobi4") {
            Poly P = assemble_completion(S, cartan_cubic(S));
            rec.values.emplace_back("value", P.str());
            KirillovReport rep = validate_kirillov(P);
            if (rep.ok) {
                rec.values.emplace_back("order", std::to_string(rep.order));
            } else {
                rec.values.emplace_back("failed", rep.failed);
                set_fail(rec, rep.witness);
            }
            bind_value(c, P, "P");
            active_ = ce_chart(n);
        } else if (sub == "algebroid") {
            Poly P = assemble_completion(S, cartan_cubic(S));
            Poly A = P.substitute(algebroid_chart(n), {});
            rec.values.emplace_back("value", A.str());
            AlgebroidReport rep = validate_algebroid(A);
            if (rep.ok) {
                rec.values.emplace_back("order", std::to_string(rep.order));
            } else {
                rec.values.emplace_back("failed", rep.failed);
                set_fail(rec, rep.witness);
            }
            bind_value(c, A, "A");
            active_ = algebroid_chart(n);
        } else {
            throw ElabError(c.pos, "unknown lie subcommand '" + sub + "'");
        }
    }

    const SessionConfig& cfg_;
    SessionResult result_;
    std::map<std::string, ChartPtr> charts_;
    std::map<std::string, Poly> bindings_;
    ChartPtr active_;
    bool any_fail_ = false;
    bool any_error_ = false;
};

} // namespace

SessionResult run_session(const SessionAst& ast, const SessionConfig& cfg) {
    return Executor(cfg).run(ast);
}

std::string render_text(const SessionResult& r) {
    std::ostringstream os;
    for (const CommandRecord& rec : r.records) {
        os << "[" << rec.status << "] " << rec.command << "\n";
        for (const auto& [k, v] : rec.values) os << "    " << k << " = " << v << "\n";
        if (!rec.detail.empty())
            os << "    " << (rec.status == "error" ? "error" : "witness") << ": " << rec.detail
               << "\n";
    }
    os << "session: "
       << (r.exit_code == 0 ? "ok" : r.exit_code == 1 ? "fail" : "error") << "\n";
    return os.str();
}

std::string render_json(const SessionResult& r) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const CommandRecord& rec : r.records) {
        nlohmann::ordered_json o;
        o["command"] = rec.command;
        o["status"] = rec.status;
        if (!rec.detail.empty()) o[rec.status == "error" ? "message" : "witness"] = rec.detail;
        if (!rec.values.empty()) {
            nlohmann::ordered_json vals;
            for (const auto& [k, v] : rec.values) vals[k] = v;
            o["values"] = vals;
        }
        records.push_back(std::move(o));
    }
    doc["records"] = std::move(records);
    doc["exit"] = r.exit_code;
    return doc.dump(2) + "\n";
}

} // namespace hk
