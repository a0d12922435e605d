// Acceptance suite: one numbered check per line, exact symbolic equality
// throughout (no tolerances), fixed seeds, and a wall-clock budget per
// check. Exits 0 only when every check passes.
//
// The suite re-derives its expected values independently of the library
// wherever a closed form exists (index-sum oracles for the Killing form and
// the canonical cubic, the classical Poisson bracket, hand-built operator
// shapes) and otherwise verifies internal cross-identities on randomized
// input.

#include "hk/algebroid.hpp"
#include "hk/bv.hpp"
#include "hk/chart.hpp"
#include "hk/diffop.hpp"
#include "hk/dsl.hpp"
#include "hk/kirillov.hpp"
#include "hk/lie.hpp"
#include "hk/poly.hpp"
#include "hk/schouten.hpp"
#include "hk/session.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace hk;

namespace {

// ---------------------------------------------------------------------------
// Deterministic generators (independent of the unit-test helpers).

struct Rng {
    std::mt19937 g;
    explicit Rng(unsigned seed) : g(seed) {}
    int i(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }
};

Rational rnd_coeff(Rng& r) {
    int n = 0;
    while (!n) n = r.i(-5, 5);
    return Rational(n, r.i(1, 4));
}

Poly V(const ChartPtr& c, const std::string& name) { return Poly::variable(c, name); }

// Random monomial of total degree (sum of exponent magnitudes) at most
// `deg`: distributes up to `deg` unit increments over the variables, odd
// ones capped at one, the invertible ones allowed a negative direction.
Monomial rnd_mono_deg(Rng& r, const Chart& ch, int deg) {
    Monomial m;
    m.e.assign(static_cast<size_t>(ch.size()), 0);
    const int slots = r.i(0, deg);
    for (int s = 0; s < slots; ++s) {
        const int idx = r.i(0, ch.size() - 1);
        const auto& v = ch.var(idx);
        auto& e = m.e[static_cast<size_t>(idx)];
        if (v.parity == 1) {
            e = 1;
        } else if (v.invertible && e <= 0 && r.i(0, 1)) {
            e = static_cast<int16_t>(e - 1);
        } else {
            e = static_cast<int16_t>(e + 1);
        }
    }
    return m;
}

Poly rnd_poly_deg(Rng& r, const ChartPtr& ch, int terms, int deg) {
    Poly p(ch);
    for (int t = 0; t < terms; ++t) p.add_term(rnd_mono_deg(r, *ch, deg), rnd_coeff(r));
    return p;
}

// Parity-homogeneous part; retries until nonzero (bounded), else constant /
// zero of the requested parity.
Poly rnd_parity_deg(Rng& r, const ChartPtr& ch, int parity, int terms, int deg) {
    for (int attempt = 0; attempt < 12; ++attempt) {
        auto [even, odd] = rnd_poly_deg(r, ch, terms, deg).parity_split();
        const Poly& pick = parity == 0 ? even : odd;
        if (!pick.is_zero()) return pick;
    }
    return parity == 0 ? Poly::constant(ch, Rational(1)) : Poly::zero(ch);
}

// Random polynomial in the given (non-scaling, even) base variables only.
Poly rnd_var_poly(Rng& r, const ChartPtr& ch, const std::vector<std::string>& names,
                  int terms, int deg) {
    Poly p = Poly::zero(ch);
    for (int t = 0; t < terms; ++t) {
        Poly m = Poly::constant(ch, rnd_coeff(r));
        const int d = r.i(0, deg);
        for (int s = 0; s < d; ++s)
            m = m * V(ch, names[static_cast<size_t>(r.i(0, static_cast<int>(names.size()) - 1))]);
        p += m;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Shared charts and fixtures.

ChartPtr paired(int n, const std::string& name) {
    std::vector<VariableSpec> vars;
    vars.push_back({"t", 0, {1, 0}, true});
    for (int i = 1; i <= n; ++i) vars.push_back({"x" + std::to_string(i), 0, {0, 0}, false});
    vars.push_back({"ts", 1, {0, 1}, false});
    for (int i = 1; i <= n; ++i) vars.push_back({"xs" + std::to_string(i), 1, {1, 1}, false});
    std::vector<std::pair<std::string, std::string>> pairs{{"t", "ts"}};
    for (int i = 1; i <= n; ++i)
        pairs.emplace_back("x" + std::to_string(i), "xs" + std::to_string(i));
    return Chart::create(name, 2, std::move(vars), std::move(pairs));
}

// Paired chart with one odd base coordinate, so odd bracket arguments exist.
ChartPtr odd_paired() {
    return Chart::create("AQ", 2,
                         {{"t", 0, {1, 0}, true},
                          {"x1", 0, {0, 0}, false},
                          {"q", 1, {0, 0}, false},
                          {"ts", 1, {0, 1}, false},
                          {"xs1", 1, {1, 1}, false},
                          {"qs", 0, {1, 1}, false}},
                         {{"t", "ts"}, {"x1", "xs1"}, {"q", "qs"}});
}

StructureConstants so3() {
    StructureConstants S(3);
    S.set(2, 0, 1, Rational(1));
    S.set(1, 0, 2, Rational(-1));
    S.set(0, 1, 2, Rational(1));
    return S;
}

Poly classical_structure(const ChartPtr& K) {
    return Poly::monomial(K, {{"t", -1}, {"xs1", 1}, {"xs2", 1}});
}

// Nonzero monic monomials of total degree <= `degree` on a chart, in
// canonical variable order (nonnegative exponents, odd capped at one),
// truncated to `cap` members.
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

// ---------------------------------------------------------------------------
// Check framework.

struct CheckResult {
    bool pass = false;
    std::string detail; // failure reason, or a short success note
};

struct Check {
    int id;
    const char* title;
    double budget_seconds;
    std::function<CheckResult()> body;
};

#define REQUIRE_OR(cond, msg)                                                  \
    do {                                                                       \
        if (!(cond)) return {false, (msg)};                                    \
    } while (0)

std::string cli_path;  // --cli
std::string data_dir;  // --data

// ---------------------------------------------------------------------------
// 1. Graded bracket axioms.

CheckResult check1() {
    const unsigned seed = 101;
    Rng r(seed);
    const ChartPtr K = paired(1, "A1"); // four variables: t, x1, ts, xs1
    int triples = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const int pf = r.i(0, 1), pg = r.i(0, 1);
        Poly F = rnd_parity_deg(r, K, pf, 3, 3);
        Poly G = rnd_parity_deg(r, K, pg, 3, 3);
        Poly H = rnd_poly_deg(r, K, 3, 3);
        ++triples;

        Poly anti_rhs = schouten(G, F);
        if (((pf + 1) * (pg + 1)) % 2 == 0) anti_rhs = -anti_rhs;
        REQUIRE_OR(schouten(F, G) == anti_rhs,
                   "shifted antisymmetry failed on triple " + std::to_string(rep));

        Poly leib_rhs = schouten(F, G) * H;
        Poly leib_tail = G * schouten(F, H);
        if (((pf + 1) * pg) % 2) leib_tail = -leib_tail;
        leib_rhs += leib_tail;
        REQUIRE_OR(schouten(F, G * H) == leib_rhs,
                   "graded Leibniz failed on triple " + std::to_string(rep));

        Poly jac_rhs = schouten(schouten(F, G), H);
        Poly jac_tail = schouten(G, schouten(F, H));
        if (((pf + 1) * (pg + 1)) % 2) jac_tail = -jac_tail;
        jac_rhs += jac_tail;
        REQUIRE_OR(schouten(F, schouten(G, H)) == jac_rhs,
                   "graded Jacobi failed on triple " + std::to_string(rep));
    }
    return {true, std::to_string(triples) + " triples, 4 variables, degree <= 3, seed " +
                      std::to_string(seed)};
}

// ---------------------------------------------------------------------------
// 2. Jacobiator: unshuffle expansion vs half-square derived bracket.

CheckResult check2() {
    const unsigned seed = 202;
    Rng r(seed);
    const ChartPtr K2 = paired(2, "A2");
    const ChartPtr KQ = odd_paired();
    int generators = 0;
    for (int g = 0; g < 60; ++g) {
        const ChartPtr K = (g % 2) ? KQ : K2;
        Poly D = rnd_parity_deg(r, K, 0, 4, 4);
        if (D.is_zero()) D = Poly::constant(K, Rational(1));
        const int n = g % 5; // arities 0..4
        std::vector<Poly> args;
        std::vector<std::string> base;
        for (int i = 0; i < K->size(); ++i)
            if (!K->is_antimomentum(i) && !K->var(i).invertible && K->var(i).parity == 0)
                base.push_back(K->var(i).name);
        for (int a = 0; a < n; ++a) {
            if (K == KQ && r.i(0, 1)) {
                args.push_back(V(K, "q") * rnd_var_poly(r, K, base, 2, 2));
            } else {
                Poly f = rnd_var_poly(r, K, base, 3, 3);
                if (f.is_zero()) f = Poly::constant(K, Rational(1));
                args.push_back(f);
            }
        }
        auto rep = jacobiator(D, args);
        REQUIRE_OR(rep.match, "expansion and half-square routes disagree for generator " +
                                  std::to_string(g) + " at arity " + std::to_string(n));
        ++generators;
    }
    return {true, std::to_string(generators) + " generators, arities <= 4, seed " +
                      std::to_string(seed)};
}

// ---------------------------------------------------------------------------
// 3. so(3) completion with index-sum oracles for the derived fixtures.

CheckResult check3() {
    StructureConstants S = so3();
    REQUIRE_OR(jacobi_check(S), "cyclic index identity rejected the so(3) table");

    // Killing oracle: k_ij = sum_{l,m} q(l,i,m) q(m,j,l), expected -2 delta.
    auto k_eng = killing_form(S);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational acc(0);
            for (int l = 0; l < 3; ++l)
                for (int m = 0; m < 3; ++m) acc += S.q(l, i, m) * S.q(m, j, l);
            REQUIRE_OR(k_eng[static_cast<size_t>(i)][static_cast<size_t>(j)] == acc,
                       "killing form disagrees with the trace oracle at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
            const Rational expect = (i == j) ? Rational(-2) : Rational(0);
            REQUIRE_OR(acc == expect, "killing form is not -2*delta at (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
        }

    // Cubic oracle: coefficients -2 epsilon_{ijk}, assembled over i<j<k in
    // the descending-factor convention.
    const ChartPtr CE = ce_chart(3);
    Poly C_oracle = Rational(-2) * (V(CE, "xi3") * V(CE, "xi2") * V(CE, "xi1"));
    Poly C = cartan_3cocycle(S);
    REQUIRE_OR(C == C_oracle, "canonical cubic differs from the -2*epsilon oracle: " + C.str());

    Poly P = build_cocycle_jacobi(S, C);
    auto rep = validate_kirillov(P);
    REQUIRE_OR(rep.ok, "completion failed the " + rep.failed + " check; witness " + rep.witness);
    REQUIRE_OR(rep.order == 4, "completion order is " + std::to_string(rep.order) + ", not 4");
    auto mr = check_master(P);
    REQUIRE_OR(mr.ok && mr.bracket.is_zero(), "self-bracket of the completion is " +
                                                   mr.bracket.str());
    REQUIRE_OR(P.parity().has_value() && *P.parity() == 0, "completion is not even");
    const std::string frozen = "t^-1*y1*xi2*xi3 + -1 * t^-1*y2*xi1*xi3 + t^-1*y3*xi1*xi2 + "
                               "-2 * t^-2*ts*xi1*xi2*xi3";
    REQUIRE_OR(P.str() == frozen, "canonical text drifted: " + P.str());
    return {true, "flat at order 4; killing and cubic match the index-sum oracles"};
}

// ---------------------------------------------------------------------------
// 4. Classical plane: homogenisation and the Poisson bracket.

CheckResult check4() {
    const unsigned seed = 404;
    Rng r(seed);
    const ChartPtr K = paired(2, "A4");
    Poly phat = Poly::monomial(K, {{"xs1", 1}, {"xs2", 1}});
    Poly P = poissonise(phat, K);
    REQUIRE_OR(P == classical_structure(K), "homogenisation drifted: " + P.str());
    auto rep = validate_kirillov(P);
    REQUIRE_OR(rep.ok && rep.order == 2, "classical structure failed validation");

    const Poly t = V(K, "t");
    REQUIRE_OR(kirillov_bracket(P, {t * V(K, "x1"), t * V(K, "x2")}) == t,
               "bracket of the coordinate sections is not +t");
    REQUIRE_OR(kirillov_bracket(P, {t * V(K, "x2"), t * V(K, "x1")}) == -t,
               "bracket swap is not -t");

    const std::vector<std::string> xs{"x1", "x2"};
    int pairs = 0;
    for (int rep2 = 0; rep2 < 40; ++rep2) {
        Poly f = rnd_var_poly(r, K, xs, 3, 3);
        Poly g = rnd_var_poly(r, K, xs, 3, 3);
        Poly lhs = kirillov_bracket(P, {t * f, t * g});
        Poly oracle =
            t * (f.partial("x1") * g.partial("x2") - f.partial("x2") * g.partial("x1"));
        REQUIRE_OR(lhs == oracle, "classical bracket oracle failed on pair " +
                                      std::to_string(rep2));
        ++pairs;
    }
    return {true, std::to_string(pairs) + " section pairs with one global sign, seed " +
                      std::to_string(seed)};
}

// ---------------------------------------------------------------------------
// 5. Quasi-derivation rule for the anchors, arities 1..4.

CheckResult check5() {
    const unsigned seed = 505;
    Rng r(seed);
    struct Fixture {
        Poly P;
        std::vector<std::string> base;
    };
    const ChartPtr K = paired(2, "A5");
    StructureConstants S = so3();
    std::vector<Fixture> fixtures;
    fixtures.push_back({classical_structure(K), {"x1", "x2"}});
    fixtures.push_back({build_cocycle_jacobi(S, cartan_3cocycle(S)), {"y1", "y2", "y3"}});

    int sections_used = 0;
    for (const auto& fx : fixtures) {
        const ChartPtr C = fx.P.chart();
        const Poly t = V(C, "t");
        for (int arity = 1; arity <= 4; ++arity) {
            for (int rep = 0; rep < 15; ++rep) {
                std::vector<Poly> secs;
                for (int a = 0; a < arity; ++a) {
                    Poly f = rnd_var_poly(r, C, fx.base, 2, 2);
                    if (f.is_zero()) f = Poly::constant(C, Rational(1));
                    secs.push_back(t * f);
                }
                Poly f = rnd_var_poly(r, C, fx.base, 2, 2);
                sections_used += arity;

                std::vector<Poly> head(secs.begin(), secs.end() - 1);
                std::vector<Poly> scaled = head;
                scaled.push_back(f * secs.back());
                Poly lhs = kirillov_bracket(fx.P, scaled);
                // Everything in sight is even, so the parity sign in the
                // rule's second term is +1.
                Poly rhs = kirillov_anchor(fx.P, head, f) * secs.back() +
                           f * kirillov_bracket(fx.P, secs);
                REQUIRE_OR(lhs == rhs, "quasi-derivation rule failed at arity " +
                                           std::to_string(arity) + " on " +
                                           C->name() + " (rep " + std::to_string(rep) + ")");
            }
        }
    }
    return {true, std::to_string(sections_used) + " sections across both fixtures, seed " +
                      std::to_string(seed)};
}

// ---------------------------------------------------------------------------
// 6. Velocity lifts and the fibre structure.

CheckResult check6() {
    const unsigned seed = 606;
    Rng r(seed);
    const ChartPtr K = paired(2, "A6");
    StructureConstants S = so3();
    Poly P_cl = classical_structure(K);
    Poly P_so3 = build_cocycle_jacobi(S, cartan_3cocycle(S));

    for (const Poly& P : {P_cl, P_so3}) {
        auto lift = tangent_lift(P);
        auto rep = validate_algebroid(lift.value);
        REQUIRE_OR(rep.ok, "lift of a flat structure on " + P.chart()->name() +
                               " failed the " + rep.failed + " check; witness " + rep.witness);
        REQUIRE_OR(rep.order == structure_order(P),
                   "lift order drifted on " + P.chart()->name());
    }

    const ChartPtr T = tangent_chart(K);
    int pairs = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Poly F = rnd_poly_deg(r, K, 3, 3);
        Poly G = rnd_poly_deg(r, K, 3, 3);
        Poly lhs = schouten(tangent_differential(F, T), tangent_differential(G, T));
        Poly rhs = tangent_differential(schouten(F, G), T);
        REQUIRE_OR(lhs == rhs, "lift is not a bracket morphism on pair " +
                                   std::to_string(rep));
        ++pairs;
    }

    Poly A = build_algebroid(S, cartan_3cocycle(S));
    auto arep = validate_algebroid(A);
    REQUIRE_OR(arep.ok && arep.order == 4, "fibre structure failed validation");
    const ChartPtr AC = A.chart();
    auto sec = [&](int i) {
        return Poly::monomial(AC, {{"t", 1}, {"y" + std::to_string(i), 1}});
    };
    const Poly s = V(AC, "t");
    // Ternary covariant action: -C_{abc} s over all orderings, with the
    // antisymmetric coefficients C_{abc} = -2 epsilon_{abc} of the cubic.
    const int perms[6][4] = {{1, 2, 3, +1}, {2, 3, 1, +1}, {3, 1, 2, +1},
                             {2, 1, 3, -1}, {1, 3, 2, -1}, {3, 2, 1, -1}};
    for (const auto& p : perms) {
        Poly nabla = higher_representation(A, {sec(p[0]), sec(p[1]), sec(p[2])}, s);
        Poly expect = Rational(-2 * p[3]) * s;
        REQUIRE_OR(nabla == expect,
                   "ternary action on ordering (" + std::to_string(p[0]) +
                       std::to_string(p[1]) + std::to_string(p[2]) + ") is " + nabla.str());
    }
    REQUIRE_OR(higher_representation(A, {sec(1), sec(1), sec(2)}, s).is_zero(),
               "repeated argument did not annihilate the ternary action");
    const Poly f = Poly::constant(AC, Rational(7));
    REQUIRE_OR(algebroid_anchor(A, {}, f).is_zero(), "0-ary anchor acts on base functions");
    REQUIRE_OR(algebroid_anchor(A, {sec(1)}, f).is_zero(), "unary anchor is nonzero");
    REQUIRE_OR(algebroid_anchor(A, {sec(1), sec(2)}, f).is_zero(), "binary anchor is nonzero");
    REQUIRE_OR(algebroid_anchor(A, {sec(1), sec(2), sec(3)}, f).is_zero(),
               "ternary anchor is nonzero");
    return {true, "lifts flat, " + std::to_string(pairs) +
                      " morphism pairs, fibre action -2*sgn, seed " + std::to_string(seed)};
}

// ---------------------------------------------------------------------------
// 7. Flow operators on the form algebra.

CheckResult check7() {
    const unsigned seed = 707;
    Rng r(seed);
    const ChartPtr K = paired(2, "A7");
    StructureConstants S = so3();

    struct Fixture {
        Poly P;
        std::vector<std::string> invariant_basis; // scaling-weight-0 span
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({classical_structure(K), {}});
    fixtures.push_back({build_cocycle_jacobi(S, cartan_3cocycle(S)), {}});

    int cartan_pairs = 0;
    for (auto& fx : fixtures) {
        const ChartPtr C = fx.P.chart();
        const ChartPtr FT = form_chart(C);
        DiffOperator L = koszul_brylinski(fx.P, FT);
        auto rep = bv_check(L);
        REQUIRE_OR(rep.odd, "flow operator on " + C->name() + " is not odd");
        REQUIRE_OR(rep.nilpotent, "flow operator on " + C->name() + " does not square to zero");
        REQUIRE_OR(op_compose(L, L).is_zero(), "normal-ordered square is nonzero");
        const int k = L.order();
        REQUIRE_OR(k == structure_order(fx.P), "operator order drifted on " + C->name());

        // The (k+1)-ary bracket of an order-k generator vanishes: sweep
        // non-decreasing tuples of spanning monomials of degree <= 3.
        auto pool = spanning_monomials(FT, 3, 12);
        std::vector<size_t> idx(static_cast<size_t>(k + 1), 0);
        size_t tuples = 0;
        bool done = pool.empty();
        while (!done && tuples < 400) {
            std::vector<Poly> args;
            for (size_t j : idx) args.push_back(pool[j]);
            Poly b = bv_bracket(L, args);
            REQUIRE_OR(b.is_zero(), "order bound violated on " + C->name() + ": (" +
                                        std::to_string(k + 1) + ")-bracket value " + b.str());
            ++tuples;
            int pos = static_cast<int>(idx.size()) - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == pool.size() - 1) --pos;
            if (pos < 0) {
                done = true;
            } else {
                const size_t next = idx[static_cast<size_t>(pos)] + 1;
                for (size_t j = static_cast<size_t>(pos); j < idx.size(); ++j) idx[j] = next;
            }
        }
        REQUIRE_OR(tuples > 0, "empty spanning pool on " + C->name());

        // Scaling-invariant closure of every bracket arity up to the order.
        std::vector<Poly> basis;
        basis.push_back(V(FT, "dt"));
        for (int i = 0; i < C->size(); ++i) {
            const auto& v = C->var(i);
            if (C->is_antimomentum(i) || v.invertible) continue;
            basis.push_back(V(FT, v.name));
            basis.push_back(V(FT, "t") * V(FT, "d" + v.name));
        }
        for (int arity = 1; arity <= k; ++arity) {
            auto cl = invariant_closure_check(L, basis, arity);
            REQUIRE_OR(cl.ok(), "invariant closure failed at arity " + std::to_string(arity) +
                                    " on " + C->name() + "; witness " + cl.witness);
        }

        // Interior-product law with the single global sign, fixture side.
        for (int rep2 = 0; rep2 < 100; ++rep2) {
            Poly Q = rnd_parity_deg(r, C, r.i(0, 1), 4, 3);
            if (Q.is_zero()) Q = Poly::constant(C, Rational(1));
            DiffOperator lhs = op_commutator(L, interior(Q, FT));
            DiffOperator rhs = interior(schouten(fx.P, Q), FT);
            REQUIRE_OR(lhs == rhs, "interior-product law drifted on " + C->name() +
                                       " at pair " + std::to_string(rep2));
            ++cartan_pairs;
        }
    }
    return {true, "both fixtures: nilpotent, order bound, closure; " +
                      std::to_string(cartan_pairs) + " interior-product pairs, seed " +
                      std::to_string(seed)};
}

// ---------------------------------------------------------------------------
// 8. Lift of a homological vector field on the (1|1)-plane.

CheckResult check8() {
    const ChartPtr C = Chart::create("A8", 2,
                                     {{"t", 0, {1, 0}, true},
                                      {"x1", 0, {0, 0}, false},
                                      {"xi1", 1, {0, 0}, false},
                                      {"ts", 1, {0, 1}, false},
                                      {"xs1", 1, {1, 1}, false},
                                      {"xis1", 0, {1, 1}, false}},
                                     {{"t", "ts"}, {"x1", "xs1"}, {"xi1", "xis1"}});
    Poly Q = V(C, "xi1") * V(C, "xs1"); // field moving x1 by xi1
    Poly P = q_lift(Q);
    REQUIRE_OR(P == Q, "divergence-free lift changed the symbol: " + P.str());
    auto rep = validate_kirillov(P);
    REQUIRE_OR(rep.ok && rep.order == 1, "lift failed validation at order 1");

    const ChartPtr FT = form_chart(C);
    DiffOperator L = koszul_brylinski(P, FT);
    DiffOperator expected(FT);
    Monomial m1;
    m1.e.assign(static_cast<size_t>(FT->size()), 0);
    Monomial m2 = m1;
    m1.e[static_cast<size_t>(FT->require("x1"))] = 1;
    m2.e[static_cast<size_t>(FT->require("dx1"))] = 1;
    expected.add_term(m1, V(FT, "xi1"));
    expected.add_term(m2, -V(FT, "dxi1"));
    REQUIRE_OR(L == expected, "flow operator shape drifted: " + L.str());
    REQUIRE_OR(op_compose(L, L).is_zero(), "flow operator square is nonzero");
    REQUIRE_OR(op_apply(L, V(FT, "x1")) == V(FT, "xi1"), "coordinate sector drifted");
    REQUIRE_OR(op_apply(L, V(FT, "dx1")) == -V(FT, "dxi1"), "form sector drifted");
    return {true, "lift equals the symbol; flow acts as the field on (x, dx)"};
}

// ---------------------------------------------------------------------------
// 9. Parser: round trip, fuzz totality, session exit codes.

std::string rnd_expr_text(Rng& rng, int depth) {
    static const char* atoms[] = {"t", "x1", "x2", "ts", "xs1", "xs2"};
    switch (depth <= 0 ? 0 : rng.i(0, 5)) {
    case 0:
        switch (rng.i(0, 3)) {
        case 0: return atoms[rng.i(0, 5)];
        case 1: return std::to_string(rng.i(0, 9));
        case 2: return std::to_string(rng.i(1, 9)) + "/" + std::to_string(rng.i(1, 9));
        default: return "t^" + std::to_string(rng.i(-3, 3));
        }
    case 1: return "-(" + rnd_expr_text(rng, depth - 1) + ")";
    case 2: {
        std::string s = rnd_expr_text(rng, depth - 1);
        const int extra = rng.i(1, 2);
        for (int i = 0; i < extra; ++i)
            s += (rng.i(0, 1) ? " + " : " - ") + rnd_expr_text(rng, depth - 1);
        return "(" + s + ")";
    }
    case 3: {
        std::string s = rnd_expr_text(rng, depth - 1);
        const int extra = rng.i(1, 2);
        for (int i = 0; i < extra; ++i) s += " * " + rnd_expr_text(rng, depth - 1);
        return s;
    }
    case 4: return "(" + rnd_expr_text(rng, depth - 1) + ")^" + std::to_string(rng.i(0, 2));
    default: return "(" + rnd_expr_text(rng, depth - 1) + ")";
    }
}

int session_exit(const std::string& text) {
    try {
        return run_session(parse_session(text)).exit_code;
    } catch (const ParseError&) {
        return 2;
    }
}

CheckResult check9() {
    const unsigned seed = 909;
    Rng rng(seed);
    const ChartPtr K = paired(2, "A9");

    for (int it = 0; it < 1000; ++it) {
        const std::string text = rnd_expr_text(rng, 3);
        Expr e1 = parse_expression(text);
        Poly p1 = elaborate_expr(e1, K, {});
        const std::string printed = expr_str(e1);
        Expr e2 = parse_expression(printed);
        REQUIRE_OR(elaborate_expr(e2, K, {}) == p1,
                   "round trip changed the value of: " + text);
        REQUIRE_OR(expr_str(e2) == printed, "canonical print is unstable on: " + text);
        Expr e3 = parse_expression(p1.str());
        REQUIRE_OR(elaborate_expr(e3, K, {}) == p1,
                   "canonical polynomial text does not reparse: " + p1.str());
    }

    static const char* pieces[] = {"chart", "let", "use", "var", "pair", "even", "odd",
                                   "weight", "invertible", "(", ")", "[", "]", "{", "}",
                                   ";", ":", ",", "^", "*", "+", "-", "->", "=", "#",
                                   "\n", " ", "/", "x", "t", "xs1", "P", "0", "1", "42",
                                   "3/4", "9999999999999999999999", "$", "\x01"};
    for (int it = 0; it < 10000; ++it) {
        std::string input;
        if (rng.i(0, 3) == 0) {
            const int len = rng.i(0, 255);
            for (int k = 0; k < len; ++k) input.push_back(static_cast<char>(rng.i(0, 255)));
        } else {
            const int len = rng.i(0, 160);
            for (int k = 0; k < len && input.size() < 1000; ++k)
                input += pieces[rng.i(0, static_cast<int>(std::size(pieces)) - 1)];
        }
        try {
            parse_session(input);
        } catch (const ParseError&) {
            // the rejection path is the expected one
        } catch (const std::exception& e) {
            return {false, std::string("parser escaped with: ") + e.what()};
        }
    }

    const std::string chart_text =
        "chart R2(2) {\n"
        "  var t: even, weight(1, 0), invertible;\n"
        "  var x[2]: even, weight(0, 0);\n"
        "  var ts: odd, weight(0, 1);\n"
        "  var xs[2]: odd, weight(1, 1);\n"
        "  pair(t, ts); pair(x, xs);\n"
        "};\n";
    struct Golden {
        const char* name;
        std::string text;
        int expect;
    };
    const std::vector<Golden> goldens = {
        {"ok", chart_text + "let P = t^-1 * xs1 * xs2;\ncheck kirillov P;\n", 0},
        {"fail", chart_text + "check kirillov ts;\n", 1},
        {"error", "use Missing;\n", 2},
        {"parse", "let ;\n", 2},
    };
    for (const auto& g : goldens) {
        const int got = session_exit(g.text);
        REQUIRE_OR(got == g.expect, std::string("session fixture '") + g.name +
                                        "' exited " + std::to_string(got) + ", expected " +
                                        std::to_string(g.expect));
    }

    std::string spawn_note = "cli spawn skipped";
    if (!cli_path.empty()) {
        namespace fs = std::filesystem;
        for (const auto& g : goldens) {
            const fs::path file =
                fs::temp_directory_path() / (std::string("acc9_") + g.name + ".hk");
            std::ofstream(file) << g.text;
            const std::string cmd =
                "'" + cli_path + "' run '" + file.string() + "' >/dev/null 2>&1";
            const int rc = std::system(cmd.c_str());
            fs::remove(file);
            REQUIRE_OR(rc != -1, "could not spawn the command-line binary");
            const int code = WEXITSTATUS(rc);
            REQUIRE_OR(code == g.expect, std::string("cli fixture '") + g.name + "' exited " +
                                             std::to_string(code) + ", expected " +
                                             std::to_string(g.expect));
        }
        spawn_note = "cli exit codes 0/1/2/2 reproduced";
    }
    return {true, "1000 round trips, 10000 fuzz inputs, " + spawn_note + ", seed " +
                      std::to_string(seed)};
}

// ---------------------------------------------------------------------------
// 10. Negative controls.

CheckResult check10() {
    StructureConstants S = so3();
    const ChartPtr CE = ce_chart(3);
    auto killing_ok = [](const StructureConstants& T) {
        auto k = killing_form(T);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                if (k[i][j] != ((i == j) ? Rational(-2) : Rational(0))) return false;
        return true;
    };
    const Poly C_oracle = Rational(-2) * (V(CE, "xi3") * V(CE, "xi2") * V(CE, "xi1"));

    int closure_breaks = 0, fixture_drifts = 0;
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                StructureConstants T = so3();
                T.set(k, i, j, S.q(k, i, j) + Rational(1));
                const std::string slot = "(" + std::to_string(k) + ";" + std::to_string(i) +
                                         "," + std::to_string(j) + ")";
                if (!jacobi_check(T)) {
                    Poly w = schouten(linear_structure(T), linear_structure(T));
                    REQUIRE_OR(!w.is_zero(),
                               "closure break at slot " + slot + " left no witness");
                    bool threw = false;
                    try {
                        (void)build_cocycle_jacobi(T, cartan_cubic(T));
                    } catch (const EngineError&) {
                        threw = true;
                    }
                    REQUIRE_OR(threw, "gated completion accepted the bad table at " + slot);
                    ++closure_breaks;
                } else {
                    const bool k_drift = !killing_ok(T);
                    const bool c_drift = (cartan_cubic(T) != C_oracle);
                    REQUIRE_OR(k_drift || c_drift,
                               "perturbation at slot " + slot + " went undetected");
                    ++fixture_drifts;
                }
            }
        }
    }
    REQUIRE_OR(closure_breaks + fixture_drifts == 9, "some slot was not exercised");
    REQUIRE_OR(closure_breaks > 0, "no perturbation broke the closure identity");
    REQUIRE_OR(fixture_drifts > 0, "no perturbation drifted the derived fixtures");

    // Corrupting one coefficient of the flat completion (a previously
    // absent quadratic term) must break flatness and leave a nonzero
    // ternary defect on linear sections.
    Poly P = build_cocycle_jacobi(S, cartan_3cocycle(S));
    const ChartPtr K = P.chart();
    Poly bad = P + Poly::monomial(K, {{"t", -1}, {"y1", 1}, {"xi1", 1}, {"xi2", 1}});
    auto rep = validate_kirillov(bad);
    REQUIRE_OR(!rep.ok && rep.failed == "master",
               "corrupted structure passed validation");
    REQUIRE_OR(!rep.witness.empty() && rep.witness != "0",
               "flatness failure reported no witness term");
    auto mr = check_master(bad);
    REQUIRE_OR(!mr.ok && !mr.bracket.is_zero(), "self-bracket of the corruption is zero");
    const Poly t = V(K, "t");
    auto jr = jacobiator(bad, {t * V(K, "y1"), t * V(K, "y2"), t * V(K, "y3")});
    REQUIRE_OR(!jr.direct.is_zero(), "ternary defect of the corruption vanished");
    REQUIRE_OR(jr.match, "defect routes disagree on the corrupted structure");
    REQUIRE_OR(jr.direct == -(t * V(K, "y2")), "ternary defect drifted: " + jr.direct.str());
    return {true, std::to_string(closure_breaks) + " closure breaks + " +
                      std::to_string(fixture_drifts) +
                      " fixture drifts detected; corrupted structure caught with witness " +
                      rep.witness};
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cli") cli_path = argv[i + 1];
        if (a == "--data") data_dir = argv[i + 1];
    }

    const std::vector<Check> checks = {
        {1, "graded bracket axioms on randomized homogeneous triples", 5.0, check1},
        {2, "unshuffle defect equals the half-square derived bracket", 30.0, check2},
        {3, "so(3) completion: flatness, Killing form, canonical cubic", 10.0, check3},
        {4, "poissonised symplectic plane gives the classical bracket", 1.0, check4},
        {5, "anchor quasi-derivation rule across arities one to four", 20.0, check5},
        {6, "velocity lifts: flat algebroids, bracket morphism, fibre action", 30.0, check6},
        {7, "flow operators: nilpotency, order bound, closure, interior law", 60.0, check7},
        {8, "homological vector-field lift on the (1|1)-plane", 1.0, check8},
        {9, "parser round trip, fuzz totality, session exit codes", 60.0, check9},
        {10, "perturbed tables and corrupted structures are detected", 30.0, check10},
    };

    int passed = 0;
    for (const auto& c : checks) {
        const auto start = std::chrono::steady_clock::now();
        CheckResult res;
        try {
            res = c.body();
        } catch (const std::exception& e) {
            res = {false, std::string("unexpected exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (res.pass && secs > c.budget_seconds) {
            res.pass = false;
            res.detail = "exceeded the " + std::to_string(c.budget_seconds) +
                         "s budget (" + std::to_string(secs) + "s)";
        }
        char line[160];
        std::snprintf(line, sizeof line, "[%2d] %s  %6.2fs  %s", c.id,
                      res.pass ? "pass" : "FAIL", secs, c.title);
        std::cout << line;
        if (!res.detail.empty()) std::cout << "\n      " << res.detail;
        std::cout << "\n";
        if (res.pass) ++passed;
    }
    std::cout << "acceptance: " << passed << "/" << checks.size() << " checks passed\n";
    return passed == static_cast<int>(checks.size()) ? 0 : 1;
}
