#pragma once

#include "hk/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace hk {

// Linear differential operator in normal form: a sum of terms
// (polynomial coefficient) x (product of partial-derivative symbols), all
// symbols standing to the right of the coefficient. Symbols multiply like
// the variables they differentiate by: odd ones anticommute and square to
// zero. A term acts on a function right to left - the highest-index symbol
// differentiates first - and the coefficient then multiplies from the
// left.
class DiffOperator {
  public:
    explicit DiffOperator(ChartPtr chart) : chart_(std::move(chart)) {}

    static DiffOperator multiplication(const Poly& c);
    static DiffOperator derivative(const ChartPtr& chart, std::string_view var);

    const ChartPtr& chart() const { return chart_; }
    const std::map<Monomial, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Accumulates coeff on the given symbol product. Throws on negative
    // exponents or an odd symbol squared.
    void add_term(const Monomial& symbols, const Poly& coeff);

    // Parity of coefficient plus symbols, equal across terms; nullopt when
    // mixed. Weight shift likewise: coefficient weight minus symbol weight.
    std::optional<int> parity() const;
    std::optional<Weight> weight() const;

    // Even and odd parts; their sum is the operator itself.
    std::pair<DiffOperator, DiffOperator> parity_split() const;

    // Largest symbol count over all terms; -1 for the zero operator.
    int order() const;

    std::string str() const;

    bool operator==(const DiffOperator& o) const = default;
    DiffOperator operator+(const DiffOperator& o) const;
    DiffOperator operator-(const DiffOperator& o) const;
    DiffOperator operator-() const;

  private:
    ChartPtr chart_;
    std::map<Monomial, Poly> terms_;
};

Poly op_apply(const DiffOperator& A, const Poly& F);

// Composition in normal form, via the push-through rule
//   d/dv (c .) = (dc/dv) . + (-1)^{v~ c~} c (d/dv .)
DiffOperator op_compose(const DiffOperator& A, const DiffOperator& B);

// Graded commutator [A,B] = A B - (-1)^{A~ B~} B A, extended bilinearly:
// mixed-parity operands are split into parity classes and the commutator
// distributes over the class pairs.
DiffOperator op_commutator(const DiffOperator& A, const DiffOperator& B);

// Whether A and B take equal values on every monomial whose exponent
// magnitudes sum to at most `degree` (a spanning-set comparison).
bool ops_agree_on_degree(const DiffOperator& A, const DiffOperator& B, int degree);

// Form algebra of a paired chart: keeps every non-antimomentum variable z
// and adjoins a generator dz of flipped parity and weight (w0(z)-1, 1)
// over the scaling/form-degree lattice; the antimomenta are dropped.
ChartPtr form_chart(const ChartPtr& C);

// d = sum_z dz d/dz over the variables z that have a form generator dz.
// Squares to zero; weight (-1, 1).
DiffOperator de_rham(const ChartPtr& FT);

// Substitution operator of a structure on a paired chart into the form
// algebra: a term c(t,x) zeta_1...zeta_k (antimomenta in canonical order)
// becomes -c d/dzeta_1' ... d/dzeta_k' where zeta' is the form generator
// of zeta's conjugate base variable. Its order equals the antimomentum
// degree of the structure.
DiffOperator interior(const Poly& P, const ChartPtr& FT);

// The flow operator [de_rham, interior(P)].
DiffOperator koszul_brylinski(const Poly& P, const ChartPtr& FT);

} // namespace hk
