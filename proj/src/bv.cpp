#include "hk/bv.hpp"

#include "hk/errors.hpp"
#include "hk/kirillov.hpp"
#include "hk/schouten.hpp"

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

BvReport bv_check(const DiffOperator& L) {
    BvReport rep;
    auto p = L.parity();
    rep.odd = p.has_value() && *p == 1;
    rep.nilpotent = op_compose(L, L).is_zero();
    return rep;
}

Poly bv_bracket(const DiffOperator& L, const std::vector<Poly>& args) {
    DiffOperator cur = L;
    for (const Poly& a : args)
        cur = op_commutator(cur, DiffOperator::multiplication(a));
    return op_apply(cur, Poly::constant(L.chart(), Rational(1)));
}

bool scaling_invariant(const Poly& F) {
    if (!F.chart()) throw EngineError("missing chart");
    const Chart& ch = *F.chart();
    for (const auto& [m, c] : F.terms())
        if (mono_weight(ch, m)[0] != 0) return false;
    return true;
}

ClosureReport invariant_closure_check(const DiffOperator& L,
                                      const std::vector<Poly>& basis, int arity) {
    if (arity < 0) throw EngineError("negative bracket arity");
    ClosureReport rep;
    for (const Poly& b : basis) {
        require_same_chart(L.chart(), b.chart());
        if (!scaling_invariant(b)) {
            rep.witness = b.str();
            return rep; // precondition failed; bracket sweep skipped
        }
    }
    rep.precondition = true;

    const size_t n = basis.size();
    if (n == 0 && arity > 0) {
        rep.closed = true; // no tuples to check
        return rep;
    }
    std::vector<size_t> idx(static_cast<size_t>(arity), 0);
    std::vector<Poly> args;
    while (true) {
        args.clear();
        for (size_t i : idx) args.push_back(basis[i]);
        Poly v = bv_bracket(L, args);
        if (!scaling_invariant(v)) {
            rep.witness = v.str();
            return rep;
        }
        size_t k = 0;
        for (; k < idx.size(); ++k) {
            if (++idx[k] < n) break;
            idx[k] = 0;
        }
        if (k == idx.size()) break;
    }
    rep.closed = true;
    return rep;
}

Poly q_lift(const Poly& Q) {
    const ChartPtr& K = Q.chart();
    if (!K) throw EngineError("missing chart");
    KirillovFrame fr = kirillov_frame(K);
    if (Q.is_zero()) return Q;

    // The symbol of an odd field pairs each coefficient with an
    // antimomentum of opposite parity, so the polynomial itself is even.
    auto qp = Q.parity();
    if (!qp || *qp != 0)
        throw EngineError("lift input must be the even symbol of an odd field");
    const Chart& ch = *K;
    for (const auto& [m, c] : Q.terms()) {
        int anti = 0;
        for (int i = 0; i < ch.size(); ++i) {
            int e = m.e[static_cast<size_t>(i)];
            if (!e) continue;
            if (i == fr.t || i == fr.ts)
                throw EngineError("lift input may not involve the scaling pair");
            if (ch.is_antimomentum(i)) anti += e;
        }
        if (anti != 1)
            throw EngineError("lift input must have antimomentum degree one; term " +
                              one_term(K, m, c));
    }

    Poly master = schouten(Q, Q);
    if (!master.is_zero()) {
        auto it = master.terms().rbegin();
        throw EngineError("lift input is not homological; surviving term " +
                          one_term(K, it->first, it->second));
    }

    // Divergence: a term c*(base)*x*_a contributes the x^a-derivative of
    // c*(base), with the sign from commuting x*_a past later odd factors.
    Poly div = Poly::zero(K);
    for (const auto& [m, c] : Q.terms()) {
        int a = -1;
        for (int i = 0; i < ch.size(); ++i)
            if (m.e[static_cast<size_t>(i)] && ch.is_antimomentum(i)) a = i;
        int odd_after = 0;
        for (int i = a + 1; i < ch.size(); ++i)
            if (m.e[static_cast<size_t>(i)] && ch.var(i).parity) ++odd_after;
        Monomial base = m;
        base.e[static_cast<size_t>(a)] -= 1;
        Rational coeff = c;
        if (ch.var(a).parity && (odd_after & 1)) coeff = -coeff;
        Poly piece(K);
        piece.add_term(base, coeff);
        div += piece.partial(ch.partner(a));
    }
    return Q + div * Poly::variable(K, ch.var(fr.t).name) *
                   Poly::variable(K, ch.var(fr.ts).name);
}

} // namespace hk
