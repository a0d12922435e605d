#pragma once

#include "hk/poly.hpp"
#include "hk/schouten.hpp"

#include <string>
#include <vector>

namespace hk {

struct AlgebroidReport {
    bool ok = false;
    std::string failed;  // "", "parity", "weight", "master"
    std::string witness; // offending term of the first failed check
    int order = -1;      // highest antimomentum degree (set when ok)
};

// Validates a structure on a chart graded by at least two weight
// components. Checks, in order: every term even; every term of bi-weight
// (1,1) in the first two components; [P,P] = 0. Stops at the first failure
// and reports the offending term.
AlgebroidReport validate_algebroid(const Poly& P);

// Distinguished function classes on a bi-graded chart, all
// antimomentum-free: sections of the algebroid have bi-weight (1,1),
// sections of the underlying line part bi-weight (1,0), and base functions
// bi-weight (0,0). The zero polynomial counts as each.
bool is_algebroid_section(const Poly& a);
bool is_line_section(const Poly& s);
bool is_algebroid_base(const Poly& f);

// r-ary antisymmetrised bracket restricted to algebroid sections; the
// result is again an algebroid section. Throws if an argument is not one.
Poly algebroid_bracket(const Poly& P, const std::vector<Poly>& sections);

// Higher covariant action of r algebroid sections on a line section s:
// the (r+1)-ary bracket with s in the trailing slot. The result is again a
// line section.
Poly higher_representation(const Poly& P, const std::vector<Poly>& sections,
                           const Poly& s);

// Action of r algebroid sections on a base function; the result is again a
// base function.
Poly algebroid_anchor(const Poly& P, const std::vector<Poly>& sections,
                      const Poly& f);

// Compatibility of the higher covariant action with multiplication by a
// base function f (parity-homogeneous, as must be the sections):
//   law 1 (f on the line section, r = sections.size()):
//     nabla_(a1..ar)(f s) = rho_(a1..ar)(f) s
//                           + (-1)^{f~ (a1~+..+ar~ + r + 1)} f nabla_(a1..ar) s
//   law 2 (f on the last section, r >= 1):
//     nabla_(a1..f ar) s = (-1)^{f~ (a1~+..+a(r-1)~ + r + 1)} f nabla_(a1..ar) s
struct RepLawReport {
    bool law1 = false;
    Poly law1_lhs, law1_rhs;
    bool law2 = false; // vacuously true when r = 0
    Poly law2_lhs, law2_rhs;
    bool ok = false;
};
RepLawReport check_representation_laws(const Poly& P,
                                       const std::vector<Poly>& sections,
                                       const Poly& f, const Poly& s);

// Velocity chart of a paired chart C: every variable z acquires a partner
// vz of the same parity; conjugation swaps across the lift, pairing each
// base variable with the lifted antimomentum (z, vz*) and each lifted base
// variable with the original antimomentum (vz, z*). Weights gain a new
// second component counting lifted variables; the original secondary
// components shift one slot right.
ChartPtr tangent_chart(const ChartPtr& C);

// Complete lift of a function F on C to the velocity chart: the image of F
// under the derivation sending each variable z to vz,
//   dT F = sum_z vz dF/dz.
// It is an even derivation of products and intertwines the brackets:
// [dT F, dT G] = dT [F, G].
Poly tangent_differential(const Poly& F, const ChartPtr& TC);

// Lift of a scaling structure to its velocity chart. For a valid structure
// the lift is even, of bi-weight (1,1) and flat, i.e. a valid algebroid
// structure.
struct TangentLiftResult {
    ChartPtr chart;
    Poly value;
};
TangentLiftResult tangent_lift(const Poly& P);

} // namespace hk
