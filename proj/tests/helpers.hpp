#pragma once

#include <random>
#include <vector>

#include "hk/chart.hpp"
#include "hk/poly.hpp"

namespace hkt {

using namespace hk;

// Mixed chart without pairing: Laurent variable, plain even variables, odd
// variables, over a two-component weight lattice.
inline ChartPtr mixed_chart() {
    static ChartPtr c = Chart::create(
        "W", 2,
        {{"t", 0, {1, 0}, true},
         {"x1", 0, {0, 0}, false},
         {"x2", 0, {0, 0}, false},
         {"xi1", 1, {0, 1}, false},
         {"xi2", 1, {0, 1}, false},
         {"xi3", 1, {1, 1}, false}});
    return c;
}

// Paired chart: even base (t, x1..xn) with odd antimomenta (ts, xs1..xsn),
// weights chosen so every antimomentum has total weight (1,1) with its base.
inline ChartPtr paired_chart(int n = 2) {
    std::vector<VariableSpec> vars;
    vars.push_back({"t", 0, {1, 0}, true});
    for (int i = 1; i <= n; ++i) vars.push_back({"x" + std::to_string(i), 0, {0, 0}, false});
    vars.push_back({"ts", 1, {0, 1}, false});
    for (int i = 1; i <= n; ++i) vars.push_back({"xs" + std::to_string(i), 1, {1, 1}, false});
    std::vector<std::pair<std::string, std::string>> pairs{{"t", "ts"}};
    for (int i = 1; i <= n; ++i) pairs.emplace_back("x" + std::to_string(i), "xs" + std::to_string(i));
    return Chart::create("K" + std::to_string(n), 2, std::move(vars), std::move(pairs));
}

// Paired chart with one odd base variable q (even partner qs), so bracket
// arguments of both parities exist on the base.
inline ChartPtr odd_paired_chart() {
    static ChartPtr c = Chart::create(
        "KQ", 2,
        {{"t", 0, {1, 0}, true},
         {"x1", 0, {0, 0}, false},
         {"q", 1, {0, 0}, false},
         {"ts", 1, {0, 1}, false},
         {"xs1", 1, {1, 1}, false},
         {"qs", 0, {1, 1}, false}},
        {{"t", "ts"}, {"x1", "xs1"}, {"q", "qs"}});
    return c;
}

struct Rng {
    std::mt19937 g;
    explicit Rng(unsigned seed) : g(seed) {}
    int i(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }
};

inline Rational rnd_coeff(Rng& r) {
    int n = 0;
    while (!n) n = r.i(-5, 5);
    return Rational(n, r.i(1, 4));
}

inline Monomial rnd_mono(Rng& r, const Chart& ch, int emax = 2) {
    Monomial m;
    m.e.assign(static_cast<size_t>(ch.size()), 0);
    for (int i = 0; i < ch.size(); ++i) {
        const auto& v = ch.var(i);
        int e;
        if (v.parity == 1)
            e = r.i(0, 1);
        else if (v.invertible)
            e = r.i(-emax, emax);
        else
            e = r.i(0, emax);
        m.e[static_cast<size_t>(i)] = static_cast<int16_t>(e);
    }
    return m;
}

inline Poly rnd_poly(Rng& r, const ChartPtr& ch, int terms = 4, int emax = 2) {
    Poly p(ch);
    for (int t = 0; t < terms; ++t) p.add_term(rnd_mono(r, *ch, emax), rnd_coeff(r));
    return p;
}

// Parity-homogeneous random polynomial (the requested parity's part of a
// random polynomial; may be zero).
inline Poly rnd_poly_parity(Rng& r, const ChartPtr& ch, int parity, int terms = 6, int emax = 2) {
    auto [even, odd] = rnd_poly(r, ch, terms, emax).parity_split();
    return parity == 0 ? even : odd;
}

// Random monomial supported on the base variables only (no antimomenta).
inline Monomial rnd_base_mono(Rng& r, const Chart& ch, int emax = 2) {
    Monomial m = rnd_mono(r, ch, emax);
    for (int i = 0; i < ch.size(); ++i)
        if (ch.is_antimomentum(i)) m.e[static_cast<size_t>(i)] = 0;
    return m;
}

inline Poly rnd_base_poly(Rng& r, const ChartPtr& ch, int terms = 3, int emax = 2) {
    Poly p(ch);
    for (int t = 0; t < terms; ++t) p.add_term(rnd_base_mono(r, *ch, emax), rnd_coeff(r));
    return p;
}

// Parity-homogeneous antimomentum-free random polynomial; retries the other
// parity class if the requested one comes out empty, and falls back to a
// bare constant (even) when everything cancels.
inline Poly rnd_base_poly_parity(Rng& r, const ChartPtr& ch, int parity, int terms = 3,
                                 int emax = 2) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto [even, odd] = rnd_base_poly(r, ch, terms, emax).parity_split();
        const Poly& pick = parity == 0 ? even : odd;
        if (!pick.is_zero()) return pick;
    }
    return parity == 0 ? Poly::constant(ch, Rational(1)) : Poly::zero(ch);
}

} // namespace hkt
