#include "hk/schouten.hpp"

#include "hk/errors.hpp"

#include <cstddef>
#include <utility>

namespace hk {

namespace {

// One parity class of F against all of G.
Poly schouten_class(const Poly& Fp, int fpar, const Poly& G) {
    const ChartPtr& cp = Fp.chart();
    const Chart& ch = *cp;
    Poly out = Poly::zero(cp);
    for (int u : ch.pair_bases()) {
        const int us = ch.partner(u);
        const int upar = ch.var(u).parity;
        Poly t1 = Fp.partial(us) * G.partial(u);
        if (!t1.is_zero()) {
            if (((upar + 1) & 1) && ((fpar + 1) & 1)) t1 = -t1;
            out += t1;
        }
        Poly t2 = Fp.partial(u) * G.partial(us);
        if (!t2.is_zero()) {
            if (!((upar & 1) && ((fpar + 1) & 1))) t2 = -t2;
            out += t2;
        }
    }
    return out;
}

void require_bracket_chart(const Poly& F, const Poly& G) {
    require_same_chart(F.chart(), G.chart());
    if (!F.chart()) throw EngineError("bracket of chartless polynomials");
    if (!F.chart()->has_pairs())
        throw EngineError("bracket requires a chart with conjugate pairs; chart '" +
                          F.chart()->name() + "' has none");
}

void require_base_argument(const Poly& a) {
    if (!a.is_antimomentum_free())
        throw EngineError("bracket arguments must be free of antimomentum variables");
}

} // namespace

Poly schouten(const Poly& F, const Poly& G) {
    require_bracket_chart(F, G);
    auto [f0, f1] = F.parity_split();
    Poly out = Poly::zero(F.chart());
    if (!f0.is_zero()) out += schouten_class(f0, 0, G);
    if (!f1.is_zero()) out += schouten_class(f1, 1, G);
    return out;
}

Poly derived_bracket(const Poly& D, const std::vector<Poly>& args) {
    if (!D.chart()) throw EngineError("bracket of chartless polynomials");
    Poly acc = D;
    for (const Poly& a : args) {
        require_base_argument(a);
        acc = schouten(acc, a);
    }
    return acc.restrict_to_base();
}

Poly skew_bracket(const Poly& D, const std::vector<Poly>& args) {
    if (!D.chart()) throw EngineError("bracket of chartless polynomials");
    const int r = static_cast<int>(args.size());
    std::vector<std::pair<Poly, Poly>> split;
    split.reserve(args.size());
    for (const Poly& a : args) {
        require_base_argument(a);
        split.push_back(a.parity_split());
    }
    Poly out = Poly::zero(D.chart());
    // Depth-first over the parity classes of the arguments, sharing bracket
    // prefixes; `alpha` accumulates f~_i (r-i) for the choices made so far.
    auto rec = [&](auto&& self, const Poly& acc, int i, int alpha) -> void {
        if (i == r) {
            Poly v = acc.restrict_to_base();
            if (v.is_zero()) return;
            if ((alpha + r + 1) & 1) v = -v;
            out += v;
            return;
        }
        const auto& [even_part, odd_part] = split[static_cast<size_t>(i)];
        if (!even_part.is_zero()) {
            Poly next = schouten(acc, even_part);
            if (!next.is_zero()) self(self, next, i + 1, alpha);
        }
        if (!odd_part.is_zero()) {
            Poly next = schouten(acc, odd_part);
            if (!next.is_zero()) self(self, next, i + 1, alpha + (r - i - 1));
        }
    };
    rec(rec, D, 0, 0);
    return out;
}

MasterReport check_master(const Poly& P) {
    MasterReport rep;
    rep.bracket = schouten(P, P);
    rep.ok = rep.bracket.is_zero();
    return rep;
}

namespace {

void require_even_generator(const Poly& D) {
    auto p = D.parity();
    if (!p || *p != 0)
        throw EngineError("Jacobi expansion requires an even generator");
}

} // namespace

Poly jacobiator_sum(const Poly& D, const std::vector<Poly>& args) {
    if (!D.chart()) throw EngineError("bracket of chartless polynomials");
    require_even_generator(D);
    const int n = static_cast<int>(args.size());
    std::vector<std::pair<Poly, Poly>> split;
    split.reserve(args.size());
    for (const Poly& a : args) {
        require_base_argument(a);
        split.push_back(a.parity_split());
    }
    Poly out = Poly::zero(D.chart());
    // Outer loop: one definite-parity representative per argument slot.
    for (unsigned combo = 0; combo < (1u << n); ++combo) {
        std::vector<const Poly*> part(static_cast<size_t>(n));
        std::vector<int> shifted(static_cast<size_t>(n)); // parity + 1 mod 2
        bool dead = false;
        for (int i = 0; i < n && !dead; ++i) {
            const bool odd = (combo >> i) & 1u;
            const Poly& p = odd ? split[static_cast<size_t>(i)].second
                                : split[static_cast<size_t>(i)].first;
            if (p.is_zero()) dead = true;
            part[static_cast<size_t>(i)] = &p;
            shifted[static_cast<size_t>(i)] = odd ? 0 : 1;
        }
        if (dead) continue;
        // Each subset mask is one (k,l)-unshuffle: the selected indices in
        // ascending order feed the inner bracket, the rest follow outside.
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            int eps = 0;
            std::vector<Poly> inner_args;
            std::vector<int> outer_idx;
            for (int t = 0; t < n; ++t) {
                if ((mask >> t) & 1u) {
                    inner_args.push_back(*part[static_cast<size_t>(t)]);
                } else {
                    outer_idx.push_back(t);
                    // Every selected s > t crosses this unselected t.
                    for (int s = t + 1; s < n; ++s)
                        if ((mask >> s) & 1u)
                            eps += shifted[static_cast<size_t>(s)] *
                                   shifted[static_cast<size_t>(t)];
                }
            }
            Poly inner = derived_bracket(D, inner_args);
            if (inner.is_zero()) continue;
            std::vector<Poly> outer_args;
            outer_args.reserve(outer_idx.size() + 1);
            outer_args.push_back(std::move(inner));
            for (int t : outer_idx) outer_args.push_back(*part[static_cast<size_t>(t)]);
            Poly term = derived_bracket(D, outer_args);
            if (term.is_zero()) continue;
            if (eps & 1) term = -term;
            out += term;
        }
    }
    return out;
}

Poly jacobiator_direct(const Poly& D, const std::vector<Poly>& args) {
    if (!D.chart()) throw EngineError("bracket of chartless polynomials");
    require_even_generator(D);
    Poly half_square = schouten(D, D) * Rational(1, 2);
    return derived_bracket(half_square, args);
}

JacobiatorReport jacobiator(const Poly& D, const std::vector<Poly>& args) {
    JacobiatorReport rep;
    rep.expansion = jacobiator_sum(D, args);
    rep.direct = jacobiator_direct(D, args);
    rep.match = rep.expansion == rep.direct;
    return rep;
}

} // namespace hk
