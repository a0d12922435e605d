#include "hk/kirillov.hpp"

#include "hk/errors.hpp"

#include <cstddef>
#include <utility>

namespace hk {

namespace {

std::string one_term(const ChartPtr& ch, const Monomial& m, const Rational& c) {
    Poly p(ch);
    p.add_term(m, c);
    return p.str();
}

} // namespace

KirillovFrame kirillov_frame(const ChartPtr& chart) {
    if (!chart) throw EngineError("missing chart");
    const Chart& ch = *chart;
    if (!ch.has_pairs())
        throw EngineError("chart '" + ch.name() + "' has no conjugate pairs");
    KirillovFrame fr;
    for (int u : ch.pair_bases()) {
        if (ch.var(u).invertible) {
            if (fr.t >= 0)
                throw EngineError("chart '" + ch.name() +
                                  "' has more than one invertible paired base variable");
            fr.t = u;
            fr.ts = ch.partner(u);
        } else {
            fr.x.push_back(u);
            fr.xs.push_back(ch.partner(u));
        }
    }
    if (fr.t < 0)
        throw EngineError("chart '" + ch.name() +
                          "' has no invertible paired base variable");
    auto w0 = [&](int i) { return ch.var(i).weight[0]; };
    bool shaped = ch.var(fr.t).parity == 0 && w0(fr.t) == 1 && w0(fr.ts) == 0;
    for (size_t a = 0; a < fr.x.size() && shaped; ++a)
        shaped = w0(fr.x[a]) == 0 && w0(fr.xs[a]) == 1;
    if (!shaped)
        throw EngineError("chart '" + ch.name() +
                          "' is not a scaling chart: need t of leading weight 1 with "
                          "weight-0 partner, and weight-0 bases with weight-1 antimomenta");
    return fr;
}

KirillovReport validate_kirillov(const Poly& P) {
    kirillov_frame(P.chart());
    KirillovReport rep;
    const Chart& ch = *P.chart();
    for (auto it = P.terms().rbegin(); it != P.terms().rend(); ++it)
        if (mono_parity(ch, it->first) != 0) {
            rep.failed = "parity";
            rep.witness = one_term(P.chart(), it->first, it->second);
            return rep;
        }
    for (auto it = P.terms().rbegin(); it != P.terms().rend(); ++it)
        if (mono_weight(ch, it->first)[0] != 1) {
            rep.failed = "weight";
            rep.witness = one_term(P.chart(), it->first, it->second);
            return rep;
        }
    auto master = check_master(P);
    if (!master.ok) {
        rep.failed = "master";
        auto it = master.bracket.terms().rbegin();
        rep.witness = one_term(P.chart(), it->first, it->second);
        return rep;
    }
    rep.ok = true;
    rep.order = structure_order(P);
    return rep;
}

int structure_order(const Poly& P) { return P.antimomentum_degree(); }

bool is_section(const Poly& s) {
    if (s.is_zero()) return true;
    if (!s.chart() || !s.is_antimomentum_free()) return false;
    auto w = s.weight0();
    return w && *w == 1;
}

bool is_base_function(const Poly& f) {
    if (f.is_zero()) return true;
    if (!f.chart() || !f.is_antimomentum_free()) return false;
    auto w = f.weight0();
    return w && *w == 0;
}

Poly kirillov_bracket(const Poly& P, const std::vector<Poly>& sections) {
    for (const Poly& s : sections)
        if (!is_section(s))
            throw EngineError("bracket arguments must be sections "
                              "(antimomentum-free, leading weight 1)");
    return skew_bracket(P, sections);
}

Poly kirillov_anchor(const Poly& P, const std::vector<Poly>& sections, const Poly& f) {
    for (const Poly& s : sections)
        if (!is_section(s))
            throw EngineError("anchor arguments must be sections "
                              "(antimomentum-free, leading weight 1)");
    if (!is_base_function(f))
        throw EngineError("anchor acts on base functions "
                          "(antimomentum-free, leading weight 0)");
    std::vector<Poly> args = sections;
    args.push_back(f);
    return skew_bracket(P, args);
}

ComponentTable extract_components(const Poly& P) {
    auto fr = kirillov_frame(P.chart());
    ComponentTable tab;
    for (const auto& [m, c] : P.terms()) {
        const bool has_ts = m.e[static_cast<size_t>(fr.ts)] != 0;
        std::vector<int> tuple;
        for (int i : fr.xs)
            if (m.e[static_cast<size_t>(i)] != 0) tuple.push_back(i);
        const int k = static_cast<int>(tuple.size());
        if (m.e[static_cast<size_t>(fr.t)] != 1 - k)
            throw EngineError("term " + one_term(P.chart(), m, c) +
                              " does not carry the scaling power t^(1-k)");
        Monomial base = m;
        base.e[static_cast<size_t>(fr.t)] = 0;
        base.e[static_cast<size_t>(fr.ts)] = 0;
        for (int i : tuple) base.e[static_cast<size_t>(i)] = 0;
        const long rev = has_ts ? static_cast<long>(k) * (k + 1) / 2
                                : static_cast<long>(k) * (k - 1) / 2;
        auto& slot = (has_ts ? tab.with_ts : tab.plain)[tuple];
        if (!slot.chart()) slot = Poly::zero(P.chart());
        slot.add_term(base, (rev & 1) ? -c : c);
    }
    return tab;
}

Poly reconstruct(const ChartPtr& chart, const ComponentTable& table) {
    auto fr = kirillov_frame(chart);
    Poly out(chart);
    auto emit = [&](const std::map<std::vector<int>, Poly>& family, bool has_ts) {
        for (const auto& [tuple, comp] : family) {
            for (size_t j = 0; j < tuple.size(); ++j) {
                if (!chart->is_antimomentum(tuple[j]) || tuple[j] == fr.ts)
                    throw EngineError("component key is not a non-scaling antimomentum");
                if (j > 0 && tuple[j] <= tuple[j - 1])
                    throw EngineError("component keys must be strictly increasing");
            }
            const int k = static_cast<int>(tuple.size());
            const long rev = has_ts ? static_cast<long>(k) * (k + 1) / 2
                                    : static_cast<long>(k) * (k - 1) / 2;
            for (const auto& [m, c] : comp.terms()) {
                require_same_chart(comp.chart(), chart);
                if (m.e[static_cast<size_t>(fr.t)] != 0 ||
                    m.e[static_cast<size_t>(fr.ts)] != 0)
                    throw EngineError("component values must be free of the scaling pair");
                for (int i : fr.xs)
                    if (m.e[static_cast<size_t>(i)] != 0)
                        throw EngineError("component values must be antimomentum-free");
                Monomial full = m;
                full.e[static_cast<size_t>(fr.t)] = static_cast<int16_t>(1 - k);
                if (has_ts) full.e[static_cast<size_t>(fr.ts)] = 1;
                for (int i : tuple) full.e[static_cast<size_t>(i)] = 1;
                out.add_term(full, (rev & 1) ? -c : c);
            }
        }
    };
    emit(table.plain, false);
    emit(table.with_ts, true);
    return out;
}

Poly poissonise(const Poly& phat, const ChartPtr& target) {
    auto fr = kirillov_frame(target);
    Poly moved = phat.chart() == target ? phat : phat.substitute(target, {});
    Poly out(target);
    for (const auto& [m, c] : moved.terms()) {
        if (m.e[static_cast<size_t>(fr.t)] != 0 || m.e[static_cast<size_t>(fr.ts)] != 0)
            throw EngineError("input of poissonise must be free of the scaling pair");
        int k = 0;
        for (int i : fr.xs) k += m.e[static_cast<size_t>(i)] != 0 ? 1 : 0;
        Monomial full = m;
        full.e[static_cast<size_t>(fr.t)] = static_cast<int16_t>(1 - k);
        out.add_term(full, c);
    }
    return out;
}

MorphismReport check_morphism(const Poly& P1, const Poly& P2, const Poly& psi,
                              const std::vector<Poly>& phi) {
    const ChartPtr& C1 = P1.chart();
    const ChartPtr& C2 = P2.chart();
    auto f1 = kirillov_frame(C1);
    auto f2 = kirillov_frame(C2);
    if (C1->gradings() != C2->gradings())
        throw EngineError("morphism check needs charts over the same weight lattice");
    if (phi.size() != f2.x.size())
        throw EngineError("need one base image per non-scaling pair of the target chart");
    auto check_input = [&](const Poly& g, const char* what) {
        require_same_chart(g.chart(), C1);
        if (!g.is_antimomentum_free())
            throw EngineError(std::string(what) + " must be antimomentum-free");
        for (const auto& [m, c] : g.terms()) {
            (void)c;
            if (m.e[static_cast<size_t>(f1.t)] != 0)
                throw EngineError(std::string(what) +
                                  " must not involve the scaling variable");
        }
    };
    check_input(psi, "scale factor");
    if (psi.is_zero()) throw EngineError("scale factor must be nonzero");
    for (const Poly& g : phi) check_input(g, "base image");

    // Comparison chart: source base variables plus target antimomenta.
    std::vector<VariableSpec> vars;
    for (int i = 0; i < C1->size(); ++i)
        if (!C1->is_antimomentum(i)) vars.push_back(C1->var(i));
    for (int i = 0; i < C2->size(); ++i)
        if (C2->is_antimomentum(i)) vars.push_back(C2->var(i));
    ChartPtr J = Chart::create("M[" + C1->name() + ">" + C2->name() + "]",
                               C1->gradings(), std::move(vars));

    auto lift = [&](const Poly& g) { return g.substitute(J, {}); };
    Poly tJ = Poly::variable(J, C1->var(f1.t).name);
    Poly S = Poly::variable(J, C2->var(f2.ts).name);
    std::vector<Poly> Y;
    Y.reserve(f2.xs.size());
    for (int i : f2.xs) Y.push_back(Poly::variable(J, C2->var(i).name));

    std::map<int, Poly> im1;
    im1[f1.ts] = lift(psi) * S;
    for (size_t a = 0; a < f1.x.size(); ++a) {
        Poly img = Poly::zero(J);
        for (size_t i = 0; i < phi.size(); ++i)
            img += lift(phi[i].partial(f1.x[a])) * Y[i];
        img += tJ * lift(psi.partial(f1.x[a])) * S;
        im1[f1.xs[a]] = img;
    }
    std::map<int, Poly> im2;
    im2[f2.t] = tJ * lift(psi);
    for (size_t i = 0; i < phi.size(); ++i) im2[f2.x[i]] = lift(phi[i]);

    MorphismReport rep;
    rep.lhs = P1.substitute(J, im1);
    rep.rhs = P2.substitute(J, im2);
    rep.ok = rep.lhs == rep.rhs;
    return rep;
}

} // namespace hk
