#pragma once

#include "hk/diffop.hpp"
#include "hk/poly.hpp"

#include <string>
#include <vector>

namespace hk {

// Preconditions for a derived-bracket generator: parity-homogeneous odd,
// and squaring to zero as an operator. Reported rather than enforced so
// that bracket values of defective generators can still be inspected.
struct BvReport {
    bool odd = false;
    bool nilpotent = false;
    bool ok() const { return odd && nilpotent; }
};

BvReport bv_check(const DiffOperator& L);

// r-ary derived bracket of the generator L: the iterated graded
// commutator [...[[L, a1], a2], ..., ar] applied to the constant one.
// Empty argument lists give L(1).
Poly bv_bracket(const DiffOperator& L, const std::vector<Poly>& args);

// True when every exponent-weighted occurrence in F carries scaling
// weight zero (first grading component).
bool scaling_invariant(const Poly& F);

struct ClosureReport {
    bool precondition = false; // every basis member is scaling-invariant
    bool closed = false;       // every arity-fold bracket is too
    std::string witness;       // offending basis member or bracket value
    bool ok() const { return precondition && closed; }
};

// Checks that the span of `basis` is closed under the arity-fold derived
// bracket of L in the scaling-invariant sense: all bracket values of
// basis tuples have scaling weight zero. A non-invariant basis member
// fails the precondition and skips the bracket sweep.
ClosureReport invariant_closure_check(const DiffOperator& L,
                                      const std::vector<Poly>& basis, int arity);

// Scaling structure of an odd homological vector field written as its
// symbol Sigma Q^a x*_a with base-only coefficients (even as a
// polynomial): appends the divergence of the field times the scaling
// pair. Throws when the symbol is not even, has antimomentum degree
// other than one, involves the scaling pair, or fails [Q, Q] = 0 (the
// witness names a surviving term).
Poly q_lift(const Poly& Q);

} // namespace hk
