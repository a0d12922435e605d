#pragma once

#include "hk/poly.hpp"

#include <string>
#include <vector>

namespace hk {

// Exact structure constants q(k,i,j) = Q^k_{ij} of a finite-dimensional
// Lie algebra, skew in the lower pair by construction.
class StructureConstants {
  public:
    explicit StructureConstants(int dim);

    // {"dim": n, "Q": [[i, j, k, num, den], ...]} with one-based indices
    // and i < j; the (j, i) entries are filled in with the opposite sign.
    static StructureConstants from_json(const std::string& text);
    static StructureConstants from_json_file(const std::string& path);

    int dim() const { return dim_; }
    const Rational& q(int k, int i, int j) const; // zero-based
    void set(int k, int i, int j, const Rational& v); // also stores -v at (j,i)

  private:
    int dim_;
    std::vector<Rational> q_;
};

// Exact verification of the cyclic index identity
// sum_l q(m,i,l) q(l,j,k) + cyclic in (i,j,k) = 0.
bool jacobi_check(const StructureConstants& S);

// Scaling chart over the dual space: (t, y_1..y_n, ts, xi_1..xi_n) with
// pairs (t, ts) and (y_i, xi_i); the same chart object is returned for
// equal dimensions.
ChartPtr ce_chart(int dim);

// Linear bivector of the bracket on the dual space, built from the
// structure constants without any checks.
Poly linear_structure(const StructureConstants& S);

struct CEStructures {
    Poly lambda2; // linear bivector; flat exactly when Jacobi holds
    Poly euler1;  // sum xi_i y_i
};

// Both canonical structures; throws when the Jacobi identity fails.
CEStructures ce_structures(const StructureConstants& S);

// k_ij = trace of ad_i compose ad_j, exact and symmetric.
std::vector<std::vector<Rational>> killing_form(const StructureConstants& S);

// Canonical cubic (1/6) C_ijk xi_k xi_j xi_i with
// C_ijk = sum_l k_il q(l,k,j) + k_jl q(l,k,i) + k_kl q(l,i,j),
// built without the closure gate (well-defined for any table).
Poly cartan_cubic(const StructureConstants& S);

// The canonical cubic, gated: throws when it fails the cocycle condition
// against the linear structure.
Poly cartan_3cocycle(const StructureConstants& S);

// Scaling completion t^-1 L + t^-m C E + t^(1-m) C ts assembled without
// any closure gates or validation. C must be zero or odd of pure
// antimomentum degree m, free of the scaling pair.
Poly assemble_completion(const StructureConstants& S, const Poly& C);

// Gated completion of an odd cocycle: requires the cyclic index identity,
// assembles, validates the result as a scaling structure and throws with
// the master-equation residue on failure.
Poly build_cocycle_jacobi(const StructureConstants& S, const Poly& C);

// Fibre chart: the ce_chart variables re-graded over three components so
// that y_i carries the fibre weight and xi_i its conjugate role.
ChartPtr algebroid_chart(int dim);

// Carries the cocycle completion onto the fibre chart and validates it
// as a higher algebroid structure.
Poly build_algebroid(const StructureConstants& S, const Poly& C);

} // namespace hk
