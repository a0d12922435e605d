#include "hk/diffop.hpp"

#include "hk/errors.hpp"

#include <cstddef>
#include <functional>
#include <utility>

namespace hk {

namespace {

Monomial unit_symbol(const Chart& ch, int v) {
    Monomial m;
    m.e.assign(static_cast<size_t>(ch.size()), 0);
    m.e[static_cast<size_t>(v)] = 1;
    return m;
}

void accumulate(std::map<Monomial, Poly>& into, const Monomial& m, const Poly& c) {
    auto it = into.find(m);
    if (it == into.end()) {
        into.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
}

} // namespace

DiffOperator DiffOperator::multiplication(const Poly& c) {
    if (!c.chart()) throw EngineError("operator over a chartless polynomial");
    DiffOperator out(c.chart());
    Monomial none;
    none.e.assign(static_cast<size_t>(c.chart()->size()), 0);
    out.add_term(none, c);
    return out;
}

DiffOperator DiffOperator::derivative(const ChartPtr& chart, std::string_view var) {
    if (!chart) throw EngineError("operator without a chart");
    DiffOperator out(chart);
    out.add_term(unit_symbol(*chart, chart->require(var)),
                 Poly::constant(chart, Rational(1)));
    return out;
}

void DiffOperator::add_term(const Monomial& symbols, const Poly& coeff) {
    if (!chart_) throw EngineError("operator without a chart");
    require_same_chart(chart_, coeff.chart());
    if (static_cast<int>(symbols.e.size()) != chart_->size())
        throw EngineError("symbol monomial does not match the chart");
    for (int i = 0; i < chart_->size(); ++i) {
        int e = symbols.e[static_cast<size_t>(i)];
        if (e < 0) throw EngineError("negative derivative exponent");
        if (e > 1 && chart_->var(i).parity == 1)
            throw EngineError("odd derivative symbol squared");
    }
    if (coeff.is_zero()) return;
    accumulate(terms_, symbols, coeff);
}

std::optional<int> DiffOperator::parity() const {
    std::optional<int> par;
    for (const auto& [m, c] : terms_) {
        auto cp = c.parity();
        if (!cp) return std::nullopt;
        int p = (*cp + mono_parity(*chart_, m)) & 1;
        if (par && *par != p) return std::nullopt;
        par = p;
    }
    if (!par) return 0; // the zero operator
    return par;
}

std::optional<Weight> DiffOperator::weight() const {
    std::optional<Weight> wt;
    for (const auto& [m, c] : terms_) {
        auto cw = c.weight();
        if (!cw) return std::nullopt;
        Weight w = *cw;
        Weight sw = mono_weight(*chart_, m);
        for (size_t g = 0; g < w.size(); ++g) w[g] -= sw[g];
        if (wt && *wt != w) return std::nullopt;
        wt = w;
    }
    return wt; // nullopt for the zero operator
}

std::pair<DiffOperator, DiffOperator> DiffOperator::parity_split() const {
    DiffOperator even(chart_), odd(chart_);
    for (const auto& [m, c] : terms_) {
        auto [c0, c1] = c.parity_split();
        const bool sp = mono_parity(*chart_, m) & 1;
        const Poly& ce = sp ? c1 : c0;
        const Poly& co = sp ? c0 : c1;
        if (!ce.is_zero()) even.terms_.emplace(m, ce);
        if (!co.is_zero()) odd.terms_.emplace(m, co);
    }
    return {even, odd};
}

int DiffOperator::order() const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int e : m.e) s += e;
        if (s > best) best = s;
    }
    return best;
}

std::string DiffOperator::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!out.empty()) out += " + ";
        out += "(" + it->second.str() + ")";
        for (int i = 0; i < chart_->size(); ++i) {
            int e = it->first.e[static_cast<size_t>(i)];
            if (!e) continue;
            out += " d/" + chart_->var(i).name;
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
    require_same_chart(chart_, o.chart_);
    DiffOperator out = *this;
    for (const auto& [m, c] : o.terms_) accumulate(out.terms_, m, c);
    return out;
}

DiffOperator DiffOperator::operator-(const DiffOperator& o) const { return *this + (-o); }

DiffOperator DiffOperator::operator-() const {
    DiffOperator out(chart_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly op_apply(const DiffOperator& A, const Poly& F) {
    require_same_chart(A.chart(), F.chart());
    const Chart& ch = *A.chart();
    Poly out = Poly::zero(A.chart());
    for (const auto& [m, c] : A.terms()) {
        Poly v = F;
        for (int i = ch.size() - 1; i >= 0 && !v.is_zero(); --i)
            for (int k = 0; k < m.e[static_cast<size_t>(i)] && !v.is_zero(); ++k)
                v = v.partial(i);
        if (!v.is_zero()) out += c * v;
    }
    return out;
}

DiffOperator op_compose(const DiffOperator& A, const DiffOperator& B) {
    require_same_chart(A.chart(), B.chart());
    const Chart& ch = *A.chart();
    DiffOperator out(A.chart());
    for (const auto& [mA, cA] : A.terms()) {
        std::map<Monomial, Poly> cur(B.terms().begin(), B.terms().end());
        for (int v = ch.size() - 1; v >= 0; --v) {
            const int reps = mA.e[static_cast<size_t>(v)];
            const int vpar = ch.var(v).parity;
            const Monomial unit = unit_symbol(ch, v);
            for (int k = 0; k < reps; ++k) {
                std::map<Monomial, Poly> next;
                for (const auto& [m, c] : cur) {
                    Poly dc = c.partial(v);
                    if (!dc.is_zero()) accumulate(next, m, dc);
                    Poly pass = c;
                    if (vpar) {
                        auto [c0, c1] = c.parity_split();
                        pass = c0 - c1;
                    }
                    if (pass.is_zero()) continue;
                    Monomial prod;
                    int sign = mono_mul(ch, unit, m, prod);
                    if (!sign) continue;
                    accumulate(next, prod, sign < 0 ? -pass : pass);
                }
                cur = std::move(next);
            }
        }
        for (const auto& [m, c] : cur) {
            Poly scaled = cA * c;
            if (!scaled.is_zero()) out.add_term(m, scaled);
        }
    }
    return out;
}

namespace {

DiffOperator commutator_homog(const DiffOperator& A, int pa, const DiffOperator& B,
                              int pb) {
    DiffOperator ba = op_compose(B, A);
    if ((pa & 1) && (pb & 1)) return op_compose(A, B) + ba;
    return op_compose(A, B) - ba;
}

} // namespace

DiffOperator op_commutator(const DiffOperator& A, const DiffOperator& B) {
    require_same_chart(A.chart(), B.chart());
    auto [a0, a1] = A.parity_split();
    auto [b0, b1] = B.parity_split();
    const DiffOperator* as[2] = {&a0, &a1};
    const DiffOperator* bs[2] = {&b0, &b1};
    DiffOperator out(A.chart());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (as[i]->is_zero() || bs[j]->is_zero()) continue;
            out = out + commutator_homog(*as[i], i, *bs[j], j);
        }
    return out;
}

bool ops_agree_on_degree(const DiffOperator& A, const DiffOperator& B, int degree) {
    require_same_chart(A.chart(), B.chart());
    const Chart& ch = *A.chart();
    Monomial m;
    m.e.assign(static_cast<size_t>(ch.size()), 0);
    std::function<bool(int, int)> rec = [&](int i, int budget) -> bool {
        if (i == ch.size()) {
            Poly probe(A.chart());
            probe.add_term(m, Rational(1));
            return op_apply(A, probe) == op_apply(B, probe);
        }
        const auto& v = ch.var(i);
        int lo = v.invertible ? -budget : 0;
        int hi = v.parity == 1 ? (budget > 0 ? 1 : 0) : budget;
        for (int e = lo; e <= hi; ++e) {
            m.e[static_cast<size_t>(i)] = static_cast<int16_t>(e);
            if (!rec(i + 1, budget - (e < 0 ? -e : e))) return false;
        }
        m.e[static_cast<size_t>(i)] = 0;
        return true;
    };
    return rec(0, degree);
}

ChartPtr form_chart(const ChartPtr& C) {
    if (!C) throw EngineError("missing chart");
    const Chart& ch = *C;
    if (!ch.has_pairs()) throw EngineError("form chart needs a paired source");
    std::vector<VariableSpec> vars;
    for (int i = 0; i < ch.size(); ++i) {
        if (ch.is_antimomentum(i)) continue;
        const VariableSpec& v = ch.var(i);
        vars.push_back({v.name, v.parity, {v.weight[0], 0}, v.invertible});
    }
    for (int i = 0; i < ch.size(); ++i) {
        if (ch.is_antimomentum(i)) continue;
        const VariableSpec& v = ch.var(i);
        vars.push_back({"d" + v.name, (v.parity + 1) & 1, {v.weight[0] - 1, 1}, false});
    }
    return Chart::create("F" + ch.name(), 2, std::move(vars));
}

DiffOperator de_rham(const ChartPtr& FT) {
    if (!FT) throw EngineError("missing chart");
    const Chart& ch = *FT;
    DiffOperator out(FT);
    for (int i = 0; i < ch.size(); ++i) {
        int di = ch.index_of("d" + ch.var(i).name);
        if (di < 0) continue;
        out.add_term(unit_symbol(ch, i), Poly::variable(FT, ch.var(di).name));
    }
    if (out.is_zero())
        throw EngineError("chart '" + ch.name() + "' has no form generators");
    return out;
}

DiffOperator interior(const Poly& P, const ChartPtr& FT) {
    if (!FT) throw EngineError("missing chart");
    const ChartPtr& C = P.chart();
    if (!C) throw EngineError("missing chart");
    const Chart& ch = *C;
    if (!ch.has_pairs())
        throw EngineError("substitution operator needs a paired source chart");
    DiffOperator out(FT);
    for (const auto& [m, c] : P.terms()) {
        Monomial sym, coef;
        sym.e.assign(static_cast<size_t>(FT->size()), 0);
        coef.e.assign(static_cast<size_t>(FT->size()), 0);
        for (int i = 0; i < ch.size(); ++i) {
            int e = m.e[static_cast<size_t>(i)];
            if (!e) continue;
            if (ch.is_antimomentum(i)) {
                int base = ch.partner(i);
                int j = FT->index_of("d" + ch.var(base).name);
                if (j < 0)
                    throw EngineError("no form generator for '" + ch.var(base).name + "'");
                sym.e[static_cast<size_t>(j)] = static_cast<int16_t>(e);
            } else {
                int j = FT->index_of(ch.var(i).name);
                if (j < 0)
                    throw EngineError("variable '" + ch.var(i).name +
                                      "' missing from the form chart");
                coef.e[static_cast<size_t>(j)] = static_cast<int16_t>(e);
            }
        }
        Poly cp(FT);
        cp.add_term(coef, -c); // the fixed overall sign of the substitution
        out.add_term(sym, cp);
    }
    return out;
}

DiffOperator koszul_brylinski(const Poly& P, const ChartPtr& FT) {
    return op_commutator(de_rham(FT), interior(P, FT));
}

} // namespace hk
