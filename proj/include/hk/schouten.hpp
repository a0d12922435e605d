#pragma once

#include "hk/poly.hpp"

#include <vector>

namespace hk {

// Odd graded bracket induced by the chart's conjugate pairs (u, u*):
// for F of definite parity,
//   [F,G] = sum over pairs  (-1)^{(u~+1)(F~+1)} dF/du* dG/du
//                         - (-1)^{u~(F~+1)}     dF/du  dG/du*,
// extended additively over the parity classes of F. Requires a paired chart.
// The result has parity F~+G~+1 and weight w(F)+w(G)-w(u)-w(u*).
Poly schouten(const Poly& F, const Poly& G);

// Iterated bracket pushed to the base:
//   (a_1,...,a_n) = restrict_to_base([...[[D,a_1],a_2]...,a_n]).
// Every argument must be free of antimomentum variables; n = 0 returns the
// base restriction of D itself.
Poly derived_bracket(const Poly& D, const std::vector<Poly>& args);

// Antisymmetrised n-ary bracket: (-1)^alpha times the derived bracket with
//   alpha = f~_1 (r-1) + f~_2 (r-2) + ... + f~_{r-1} + r + 1,
// computed multilinearly over the parity classes of the arguments.
Poly skew_bracket(const Poly& D, const std::vector<Poly>& args);

struct MasterReport {
    Poly bracket;    // [P,P]
    bool ok = false; // bracket vanishes identically
};

// Evaluates [P,P] and tests it for exact vanishing.
MasterReport check_master(const Poly& P);

// n-th Jacobi defect of the derived brackets of an even generator D,
// as the unshuffle expansion
//   sum_{k+l=n} sum_{(k,l)-unshuffles s} (-1)^eps
//       ((a_{s(1)},...,a_{s(k)}), a_{s(k+1)},...,a_{s(n)})
// with eps the Koszul sign of the unshuffle taken with respect to the
// shifted parities a~+1. The k = 0 term uses the 0-ary bracket (the base
// restriction of D) as the leading argument.
Poly jacobiator_sum(const Poly& D, const std::vector<Poly>& args);

// The same defect computed directly as the derived bracket of (1/2)[D,D].
Poly jacobiator_direct(const Poly& D, const std::vector<Poly>& args);

struct JacobiatorReport {
    Poly expansion; // unshuffle route
    Poly direct;    // half-square route
    bool match = false;
};

// Runs both routes and compares them; they agree identically, and both are
// zero for every argument list exactly when [D,D] = 0.
JacobiatorReport jacobiator(const Poly& D, const std::vector<Poly>& args);

} // namespace hk
