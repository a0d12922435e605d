#pragma once

#include "hk/poly.hpp"
#include "hk/schouten.hpp"

#include <map>
#include <string>
#include <vector>

namespace hk {

// Distinguished variables of a scaling chart: exactly one paired base
// variable is invertible (the scaling variable t, even, leading weight 1,
// odd partner of leading weight 0); every other pair consists of a leading-
// weight-0 base variable and a leading-weight-1 antimomentum.
struct KirillovFrame {
    int t = -1;
    int ts = -1;
    std::vector<int> x;  // non-scaling base variables, declaration order
    std::vector<int> xs; // their antimomenta
};
KirillovFrame kirillov_frame(const ChartPtr& chart);

struct KirillovReport {
    bool ok = false;
    std::string failed;  // "", "parity", "weight", "master"
    std::string witness; // offending term of the first failed check
    int order = -1;      // highest antimomentum degree (set when ok)
};

// Checks, in order: every term even; every term of leading weight 1;
// [P,P] = 0. Stops at the first failure and reports the offending term.
KirillovReport validate_kirillov(const Poly& P);

int structure_order(const Poly& P); // highest antimomentum degree

// Sections are antimomentum-free of leading weight 1 (t times a base
// function); base functions are antimomentum-free of leading weight 0.
// The zero polynomial counts as both.
bool is_section(const Poly& s);
bool is_base_function(const Poly& f);

// r-ary antisymmetrised bracket restricted to sections; the result is again
// a section. Throws if an argument is not a section.
Poly kirillov_bracket(const Poly& P, const std::vector<Poly>& sections);

// Action of r sections on a leading-weight-0 base function; the result is
// again a base function.
Poly kirillov_anchor(const Poly& P, const std::vector<Poly>& sections, const Poly& f);

// Coefficient families of a leading-weight-1 structure, keyed by strictly
// increasing tuples of antimomentum chart indices. Each value is a function
// of the non-scaling base variables. A term with k antimomenta from the
// non-scaling pairs must carry t^{1-k}; extract_components throws on any
// term violating that pattern. reconstruct is the exact inverse.
struct ComponentTable {
    std::map<std::vector<int>, Poly> plain;   // terms without the scaling partner
    std::map<std::vector<int>, Poly> with_ts; // terms carrying the scaling partner
};
ComponentTable extract_components(const Poly& P);
Poly reconstruct(const ChartPtr& chart, const ComponentTable& table);

// Homogenisation: multiplies the antimomentum-degree-k part by t^{1-k}.
// The input (carried to the target chart by variable name) must not involve
// the scaling variable or its partner.
Poly poissonise(const Poly& phat, const ChartPtr& target);

struct MorphismReport {
    bool ok = false;
    Poly lhs; // source structure pushed along the lifted map
    Poly rhs; // target structure pulled back along the base map
};

// Tests whether the base map (t, x) -> (t psi(x), phi(x)) intertwines the
// two structures. psi is a nonzero base function of the source x's; phi
// holds one image per non-scaling pair of the target chart. Both sides are
// compared on a chart joining the source base variables with the target
// antimomenta.
MorphismReport check_morphism(const Poly& P1, const Poly& P2, const Poly& psi,
                              const std::vector<Poly>& phi);

} // namespace hk
