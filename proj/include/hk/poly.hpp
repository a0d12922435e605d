#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hk/chart.hpp"
#include "hk/rational.hpp"

namespace hk {

// Exponent vector over a chart's variables, in declaration order. Odd
// exponents live in {0,1}; invertible even variables may carry negative
// (Laurent) exponents; all other exponents are >= 0.
struct Monomial {
    std::vector<int16_t> e;

    bool operator==(const Monomial&) const = default;
    auto operator<=>(const Monomial&) const = default;
};

struct Grading {
    int parity = 0;
    Weight weight;

    bool operator==(const Grading&) const = default;
    auto operator<=>(const Grading&) const = default;
};

struct GradingReport {
    bool parity_homogeneous = true;
    bool weight_homogeneous = true;
    int parity = 0; // meaningful when parity_homogeneous
    Weight weight;  // meaningful when weight_homogeneous; zero weight for 0
    std::vector<Grading> classes; // distinct term gradings, sorted
};

// Supercommutative polynomial in the chart's variables with exact rational
// coefficients. Terms are kept in a canonically ordered map with no zero
// coefficients, so equality is plain structural equality.
class Poly {
  public:
    Poly() = default; // chartless zero; usable only as assignment target
    explicit Poly(ChartPtr chart) : chart_(std::move(chart)) {}

    static Poly zero(ChartPtr chart) { return Poly(std::move(chart)); }
    static Poly constant(ChartPtr chart, Rational c);
    static Poly variable(const ChartPtr& chart, std::string_view name);
    // Convenience builder: monomial({{"t",-1},{"xs1",1}}, {1,2}) etc.
    static Poly monomial(const ChartPtr& chart,
                         std::initializer_list<std::pair<std::string_view, int>> powers,
                         Rational coeff = Rational(1));

    const ChartPtr& chart() const { return chart_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool operator==(const Poly& o) const { return chart_ == o.chart_ && terms_ == o.terms_; }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    Poly operator-() const;

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    friend Poly operator*(const Poly& a, const Poly& b); // dispatches serial/parallel

    // Left derivative with respect to a variable: the variable is
    // anticommuted to the leftmost position (collecting Koszul signs) and
    // removed; even variables follow the power rule.
    Poly partial(int var) const;
    Poly partial(std::string_view name) const;

    GradingReport grading() const;
    std::optional<int> parity() const;
    std::optional<Weight> weight() const;
    // Scaling weight (component 0) when homogeneous.
    std::optional<int> weight0() const;
    std::pair<Poly, Poly> parity_split() const; // (even part, odd part)

    // Kills every term containing an antimomentum; requires a paired chart.
    Poly restrict_to_base() const;
    bool is_antimomentum_free() const;
    // Largest total degree in antimomentum variables over the terms.
    int antimomentum_degree() const;
    // Terms of antimomentum degree exactly k.
    Poly antimomentum_part(int k) const;

    // Substitutes every variable by its image on the target chart. Variables
    // absent from the map must exist on the target with the same name and
    // parity. Images must match the substituted variable's parity; a
    // negatively-powered variable needs a single-term image in invertible
    // variables only.
    Poly substitute(const ChartPtr& target, const std::map<int, Poly>& images) const;

    std::string str() const; // canonical text form

    void add_term(const Monomial& m, const Rational& c); // merges, drops zeros

  private:
    ChartPtr chart_;
    std::map<Monomial, Rational> terms_;
};

// Monomial helpers (exposed mainly for the operator layer and tests).
int mono_parity(const Chart& chart, const Monomial& m);
Weight mono_weight(const Chart& chart, const Monomial& m);
// Merge canonical monomials a*b; returns the Koszul sign (+1/-1) or 0 when a
// shared odd variable annihilates the product. `out` receives the merged
// exponents when nonzero.
int mono_mul(const Chart& chart, const Monomial& a, const Monomial& b, Monomial& out);
std::string mono_str(const Chart& chart, const Monomial& m);

// Serial reference product kernel; `operator*` may route large inputs through
// the OpenMP kernel in parallel.hpp instead.
Poly mul_serial(const Poly& a, const Poly& b);

} // namespace hk
