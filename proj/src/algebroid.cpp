#include "hk/algebroid.hpp"

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

void require_bigraded(const ChartPtr& chart) {
    if (!chart) throw EngineError("missing chart");
    if (chart->gradings() < 2)
        throw EngineError("chart '" + chart->name() +
                          "' needs at least two weight components");
}

// Every term antimomentum-free with the first two weight components (w0, w1).
bool class_member(const Poly& p, int w0, int w1) {
    require_bigraded(p.chart());
    if (!p.is_antimomentum_free()) return false;
    const Chart& ch = *p.chart();
    for (const auto& [m, c] : p.terms()) {
        Weight w = mono_weight(ch, m);
        if (w[0] != w0 || w[1] != w1) return false;
    }
    return true;
}

int homogeneous_parity(const Poly& p, const char* what) {
    auto par = p.parity();
    if (!par)
        throw EngineError(std::string(what) + " must be parity-homogeneous");
    return *par;
}

} // namespace

AlgebroidReport validate_algebroid(const Poly& P) {
    require_bigraded(P.chart());
    if (!P.chart()->has_pairs())
        throw EngineError("chart '" + P.chart()->name() + "' has no conjugate pairs");
    AlgebroidReport rep;
    const Chart& ch = *P.chart();
    for (auto it = P.terms().rbegin(); it != P.terms().rend(); ++it)
        if (mono_parity(ch, it->first) != 0) {
            rep.failed = "parity";
            rep.witness = one_term(P.chart(), it->first, it->second);
            return rep;
        }
    for (auto it = P.terms().rbegin(); it != P.terms().rend(); ++it) {
        Weight w = mono_weight(ch, it->first);
        if (w[0] != 1 || w[1] != 1) {
            rep.failed = "weight";
            rep.witness = one_term(P.chart(), it->first, it->second);
            return rep;
        }
    }
    auto master = check_master(P);
    if (!master.ok) {
        rep.failed = "master";
        auto it = master.bracket.terms().rbegin();
        rep.witness = one_term(P.chart(), it->first, it->second);
        return rep;
    }
    rep.ok = true;
    rep.order = P.antimomentum_degree();
    return rep;
}

bool is_algebroid_section(const Poly& a) { return class_member(a, 1, 1); }
bool is_line_section(const Poly& s) { return class_member(s, 1, 0); }
bool is_algebroid_base(const Poly& f) { return class_member(f, 0, 0); }

Poly algebroid_bracket(const Poly& P, const std::vector<Poly>& sections) {
    for (const Poly& a : sections) {
        require_same_chart(P.chart(), a.chart());
        if (!is_algebroid_section(a))
            throw EngineError("bracket argument is not an algebroid section");
    }
    return skew_bracket(P, sections);
}

Poly higher_representation(const Poly& P, const std::vector<Poly>& sections,
                           const Poly& s) {
    for (const Poly& a : sections) {
        require_same_chart(P.chart(), a.chart());
        if (!is_algebroid_section(a))
            throw EngineError("covariant action argument is not an algebroid section");
    }
    require_same_chart(P.chart(), s.chart());
    if (!is_line_section(s))
        throw EngineError("covariant action target is not a line section");
    std::vector<Poly> args = sections;
    args.push_back(s);
    return skew_bracket(P, args);
}

Poly algebroid_anchor(const Poly& P, const std::vector<Poly>& sections,
                      const Poly& f) {
    for (const Poly& a : sections) {
        require_same_chart(P.chart(), a.chart());
        if (!is_algebroid_section(a))
            throw EngineError("anchor argument is not an algebroid section");
    }
    require_same_chart(P.chart(), f.chart());
    if (!is_algebroid_base(f))
        throw EngineError("anchor target is not a base function");
    std::vector<Poly> args = sections;
    args.push_back(f);
    return skew_bracket(P, args);
}

RepLawReport check_representation_laws(const Poly& P,
                                       const std::vector<Poly>& sections,
                                       const Poly& f, const Poly& s) {
    const int r = static_cast<int>(sections.size());
    const int pf = homogeneous_parity(f, "base function");
    if (!is_algebroid_base(f))
        throw EngineError("law check needs a base function");
    int parsum = 0;
    for (const Poly& a : sections)
        parsum += homogeneous_parity(a, "section");

    RepLawReport rep;
    rep.law1_lhs = higher_representation(P, sections, f * s);
    Poly nabla_s = higher_representation(P, sections, s);
    Poly scaled = f * nabla_s;
    if ((pf * (parsum + r + 1)) & 1) scaled = -scaled;
    rep.law1_rhs = algebroid_anchor(P, sections, f) * s + scaled;
    rep.law1 = rep.law1_lhs == rep.law1_rhs;

    if (r == 0) {
        rep.law2 = true; // nothing to scale
    } else {
        std::vector<Poly> scaled_sections = sections;
        scaled_sections.back() = f * sections.back();
        rep.law2_lhs = higher_representation(P, scaled_sections, s);
        int head = parsum - *sections.back().parity();
        Poly rhs = f * nabla_s;
        if ((pf * (head + r + 1)) & 1) rhs = -rhs;
        rep.law2_rhs = rhs;
        rep.law2 = rep.law2_lhs == rep.law2_rhs;
    }
    rep.ok = rep.law1 && rep.law2;
    return rep;
}

ChartPtr tangent_chart(const ChartPtr& C) {
    if (!C) throw EngineError("missing chart");
    const Chart& ch = *C;
    if (!ch.has_pairs())
        throw EngineError("chart '" + ch.name() + "' has no conjugate pairs");
    const int G = ch.gradings();
    auto lifted_weight = [&](const Weight& w, int fiber) {
        Weight out;
        out.reserve(G + 1);
        out.push_back(w[0]);
        out.push_back(fiber);
        for (int k = 1; k < G; ++k) out.push_back(w[k]);
        return out;
    };
    std::vector<VariableSpec> vars;
    auto emit = [&](bool antimomenta, bool lifted) {
        for (int i = 0; i < ch.size(); ++i) {
            if (ch.is_antimomentum(i) != antimomenta) continue;
            const VariableSpec& v = ch.var(i);
            if (lifted)
                vars.push_back({"v" + v.name, v.parity, lifted_weight(v.weight, 1), false});
            else
                vars.push_back({v.name, v.parity, lifted_weight(v.weight, 0), v.invertible});
        }
    };
    emit(false, false); // base variables
    emit(false, true);  // lifted base variables
    emit(true, false);  // antimomenta
    emit(true, true);   // lifted antimomenta
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int u : ch.pair_bases()) {
        const std::string& zu = ch.var(u).name;
        const std::string& zs = ch.var(ch.partner(u)).name;
        pairs.emplace_back(zu, "v" + zs);
        pairs.emplace_back("v" + zu, zs);
    }
    return Chart::create("T" + ch.name(), G + 1, std::move(vars), std::move(pairs));
}

Poly tangent_differential(const Poly& F, const ChartPtr& TC) {
    if (!TC) throw EngineError("missing chart");
    const ChartPtr& C = F.chart();
    if (!C) throw EngineError("missing chart");
    Poly lifted = F.substitute(TC, {});
    Poly out = Poly::zero(TC);
    for (int i = 0; i < C->size(); ++i) {
        const std::string& name = C->var(i).name;
        out += Poly::variable(TC, "v" + name) * lifted.partial(name);
    }
    return out;
}

TangentLiftResult tangent_lift(const Poly& P) {
    TangentLiftResult res;
    res.chart = tangent_chart(P.chart());
    res.value = tangent_differential(P, res.chart);
    return res;
}

} // namespace hk
