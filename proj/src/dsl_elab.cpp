#include "hk/session.hpp"

#include <cstdlib>
#include <limits>
#include <set>
#include <string>

namespace hk {

namespace {

constexpr int kMaxGradings = 8;
constexpr int kMaxFamily = 1024;
constexpr long long kMaxWeightMagnitude = 1000000;
constexpr long long kMaxExponent = 64;

std::string quoted(const std::string& s) { return "'" + s + "'"; }

} // namespace

ChartPtr elaborate_chart(const ChartStmt& st) {
    if (st.gradings < 1 || st.gradings > kMaxGradings)
        throw ElabError(st.pos, "chart " + quoted(st.name) + " declares " +
                                    std::to_string(st.gradings) +
                                    " gradings; supported range is 1.." +
                                    std::to_string(kMaxGradings));

    std::vector<VariableSpec> specs;
    std::set<std::string> declared; // family base names and scalar names
    for (const VarDecl& vd : st.vars) {
        if (!declared.insert(vd.name).second)
            throw ElabError(vd.pos, "duplicate declaration of " + quoted(vd.name));
        if (vd.count > kMaxFamily)
            throw ElabError(vd.pos, "family " + quoted(vd.name) + " has " +
                                        std::to_string(vd.count) +
                                        " members; the cap is " + std::to_string(kMaxFamily));

        Weight w(static_cast<size_t>(st.gradings), 0);
        if (!vd.weight.empty()) {
            if (static_cast<int>(vd.weight.size()) != st.gradings)
                throw ElabError(vd.pos, "weight of " + quoted(vd.name) + " has " +
                                            std::to_string(vd.weight.size()) +
                                            " components; the chart declares " +
                                            std::to_string(st.gradings) + " gradings");
            for (size_t i = 0; i < vd.weight.size(); ++i) {
                long long c = vd.weight[i];
                if (c < -kMaxWeightMagnitude || c > kMaxWeightMagnitude)
                    throw ElabError(vd.pos, "weight component " + std::to_string(c) +
                                                " of " + quoted(vd.name) +
                                                " is out of range");
                w[i] = static_cast<int>(c);
            }
        }
        if (vd.invertible && vd.parity != 0)
            throw ElabError(vd.pos, "odd variable " + quoted(vd.name) +
                                        " cannot be invertible");

        const int n = vd.count == 0 ? 1 : vd.count;
        for (int i = 1; i <= n; ++i) {
            VariableSpec spec;
            spec.name = vd.count == 0 ? vd.name : vd.name + std::to_string(i);
            spec.parity = vd.parity;
            spec.weight = w;
            spec.invertible = vd.invertible;
            specs.push_back(std::move(spec));
        }
    }

    // Pairs name declarations, not members; families pair member by member.
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const PairDecl& pd : st.pairs) {
        const VarDecl* base = nullptr;
        const VarDecl* anti = nullptr;
        for (const VarDecl& vd : st.vars) {
            if (vd.name == pd.base) base = &vd;
            if (vd.name == pd.anti) anti = &vd;
        }
        if (!base) throw ElabError(pd.pos, "pair references undeclared name " + quoted(pd.base));
        if (!anti) throw ElabError(pd.pos, "pair references undeclared name " + quoted(pd.anti));
        if ((base->count == 0) != (anti->count == 0))
            throw ElabError(pd.pos, "pair mixes the scalar/family kinds of " +
                                        quoted(pd.base) + " and " + quoted(pd.anti));
        if (base->count != anti->count)
            throw ElabError(pd.pos, "pair of families " + quoted(pd.base) + " and " +
                                        quoted(pd.anti) + " with sizes " +
                                        std::to_string(base->count) + " and " +
                                        std::to_string(anti->count));
        if (base->count == 0) {
            pairs.emplace_back(pd.base, pd.anti);
        } else {
            for (int i = 1; i <= base->count; ++i)
                pairs.emplace_back(pd.base + std::to_string(i), pd.anti + std::to_string(i));
        }
    }

    try {
        return Chart::create(st.name, st.gradings, std::move(specs), std::move(pairs));
    } catch (const EngineError& e) {
        throw ElabError(st.pos, e.what());
    }
}

namespace {

Poly power_of(const Poly& base, long long n, SourcePos pos) {
    const ChartPtr& K = base.chart();
    if (!K) throw ElabError(pos, "power of a chartless value");
    if (n == 0) return Poly::constant(K, Rational(1));
    if (n > kMaxExponent || n < -kMaxExponent)
        throw ElabError(pos, "exponent " + std::to_string(n) + " exceeds the cap of " +
                                 std::to_string(kMaxExponent));
    if (n > 0) {
        Poly r = base;
        for (long long k = 1; k < n; ++k) r *= base;
        return r;
    }
    // Negative powers invert a single Laurent term with invertible variables.
    if (base.term_count() != 1)
        throw ElabError(pos, "negative power of a sum (" + std::to_string(base.term_count()) +
                                 " terms); only single terms are invertible");
    const auto& [mono, coeff] = *base.terms().begin();
    Monomial out;
    out.e.assign(mono.e.size(), 0);
    for (size_t i = 0; i < mono.e.size(); ++i) {
        if (mono.e[i] == 0) continue;
        const VariableSpec& v = base.chart()->var(static_cast<int>(i));
        if (!v.invertible)
            throw ElabError(pos, "negative power of non-invertible variable " + quoted(v.name));
        const long long scaled = static_cast<long long>(mono.e[i]) * n;
        if (scaled < std::numeric_limits<int16_t>::min() ||
            scaled > std::numeric_limits<int16_t>::max())
            throw ElabError(pos, "exponent overflow on " + quoted(v.name));
        out.e[i] = static_cast<int16_t>(scaled);
    }
    Rational num(1);
    for (long long k = 0; k < -n; ++k) num *= coeff;
    Poly r(K);
    r.add_term(out, Rational(1) / num);
    return r;
}

Poly elab(const Expr& e, const ChartPtr& active, const std::map<std::string, Poly>& bindings,
          bool top) {
    switch (e.kind) {
    case Expr::Kind::Number:
        if (!active)
            throw ElabError(e.pos, "a numeric literal needs an active chart");
        return Poly::constant(active, e.value);
    case Expr::Kind::Variable: {
        auto it = bindings.find(e.name);
        if (it != bindings.end()) {
            if (top) return it->second;
            if (!active || it->second.chart() != active)
                throw ElabError(e.pos, "binding " + quoted(e.name) + " lives on chart '" +
                                           it->second.chart()->name() +
                                           "', not the active chart" +
                                           (active ? " '" + active->name() + "'" : ""));
            return it->second;
        }
        if (!active)
            throw ElabError(e.pos, "name " + quoted(e.name) + " used with no active chart");
        if (active->index_of(e.name) < 0)
            throw ElabError(e.pos, "undefined name " + quoted(e.name) + " on chart '" +
                                       active->name() + "'");
        return Poly::variable(active, e.name);
    }
    case Expr::Kind::Negate:
        return -elab(e.children[0], active, bindings, false);
    case Expr::Kind::Power:
        return power_of(elab(e.children[0], active, bindings, false), e.exponent, e.pos);
    case Expr::Kind::Product: {
        Poly r = elab(e.children[0], active, bindings, false);
        for (size_t i = 1; i < e.children.size(); ++i)
            r *= elab(e.children[i], active, bindings, false);
        return r;
    }
    case Expr::Kind::Sum: {
        Poly r = elab(e.children[0], active, bindings, false);
        if (e.signs[0] < 0) r = -r;
        for (size_t i = 1; i < e.children.size(); ++i) {
            Poly c = elab(e.children[i], active, bindings, false);
            if (e.signs[i] > 0)
                r += c;
            else
                r -= c;
        }
        return r;
    }
    }
    std::abort(); // unreachable
}

} // namespace

Poly elaborate_expr(const Expr& e, const ChartPtr& active,
                    const std::map<std::string, Poly>& bindings) {
    return elab(e, active, bindings, true);
}

} // namespace hk
