#include "hk/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hk/parallel.hpp"

namespace hk {

namespace {

bool mono_is_valid(const Chart& chart, const Monomial& m) {
    for (int i = 0; i < chart.size(); ++i) {
        int e = m.e[static_cast<size_t>(i)];
        const auto& v = chart.var(i);
        if (v.parity == 1 && (e < 0 || e > 1)) return false;
        if (e < 0 && !v.invertible) return false;
    }
    return true;
}

} // namespace

int mono_parity(const Chart& chart, const Monomial& m) {
    int p = 0;
    for (int i : chart.odd_indices()) p += m.e[static_cast<size_t>(i)];
    return p & 1;
}

Weight mono_weight(const Chart& chart, const Monomial& m) {
    Weight w(static_cast<size_t>(chart.gradings()), 0);
    for (int i = 0; i < chart.size(); ++i) {
        int e = m.e[static_cast<size_t>(i)];
        if (!e) continue;
        const Weight& wv = chart.var(i).weight;
        for (size_t g = 0; g < w.size(); ++g) w[g] += e * wv[g];
    }
    return w;
}

int mono_mul(const Chart& chart, const Monomial& a, const Monomial& b, Monomial& out) {
    // Koszul sign: each odd factor of b moves left past the odd factors of a
    // with larger declaration index; one sign flip per transposition.
    long inversions = 0;
    const auto& odd = chart.odd_indices();
    size_t na = 0;
    for (int i : odd) na += static_cast<size_t>(a.e[static_cast<size_t>(i)]);
    size_t passed_a = 0;
    for (int i : odd) {
        bool in_a = a.e[static_cast<size_t>(i)] != 0;
        bool in_b = b.e[static_cast<size_t>(i)] != 0;
        if (in_a && in_b) return 0;
        if (in_b) inversions += static_cast<long>(na - passed_a);
        if (in_a) ++passed_a;
    }
    out.e.resize(a.e.size());
    for (size_t i = 0; i < a.e.size(); ++i)
        out.e[i] = static_cast<int16_t>(a.e[i] + b.e[i]);
    return (inversions & 1) ? -1 : 1;
}

std::string mono_str(const Chart& chart, const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < chart.size(); ++i) {
        int e = m.e[static_cast<size_t>(i)];
        if (!e) continue;
        if (!first) os << '*';
        first = false;
        os << chart.var(i).name;
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

Poly Poly::constant(ChartPtr chart, Rational c) {
    Poly p(std::move(chart));
    if (c != 0) {
        Monomial m;
        m.e.assign(static_cast<size_t>(p.chart_->size()), 0);
        p.terms_.emplace(std::move(m), std::move(c));
    }
    return p;
}

Poly Poly::variable(const ChartPtr& chart, std::string_view name) {
    return monomial(chart, {{name, 1}});
}

Poly Poly::monomial(const ChartPtr& chart,
                    std::initializer_list<std::pair<std::string_view, int>> powers,
                    Rational coeff) {
    Poly p(chart);
    if (coeff == 0) return p;
    Monomial m;
    m.e.assign(static_cast<size_t>(chart->size()), 0);
    for (const auto& [name, e] : powers)
        m.e[static_cast<size_t>(chart->require(name))] += static_cast<int16_t>(e);
    if (!mono_is_valid(*chart, m))
        throw EngineError("invalid monomial on chart '" + chart->name() + "'");
    p.terms_.emplace(std::move(m), std::move(coeff));
    return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (!chart_ && terms_.empty()) chart_ = o.chart_;
    require_same_chart(chart_, o.chart_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!chart_ && terms_.empty()) chart_ = o.chart_;
    require_same_chart(chart_, o.chart_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

Poly mul_serial(const Poly& a, const Poly& b) {
    require_same_chart(a.chart(), b.chart());
    Poly r(a.chart());
    const Chart& chart = *a.chart();
    Monomial merged;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            int sign = mono_mul(chart, ma, mb, merged);
            if (!sign) continue;
            Rational c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(merged, c);
        }
    }
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    const auto& cfg = par::config();
    long pairs = static_cast<long>(a.term_count()) * static_cast<long>(b.term_count());
    if (cfg.enabled && pairs >= cfg.threshold && par::max_threads() > 1)
        return par::mul_openmp(a, b);
    return mul_serial(a, b);
}

Poly Poly::partial(int var) const {
    const Chart& chart = *chart_;
    const auto& v = chart.var(var);
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        int e = m.e[static_cast<size_t>(var)];
        if (!e) continue;
        Monomial n = m;
        if (v.parity == 1) {
            int swaps = 0;
            for (int i : chart.odd_indices()) {
                if (i >= var) break;
                swaps += m.e[static_cast<size_t>(i)];
            }
            n.e[static_cast<size_t>(var)] = 0;
            r.add_term(n, (swaps & 1) ? -c : c);
        } else {
            n.e[static_cast<size_t>(var)] = static_cast<int16_t>(e - 1);
            r.add_term(n, c * e);
        }
    }
    return r;
}

Poly Poly::partial(std::string_view name) const { return partial(chart_->require(name)); }

GradingReport Poly::grading() const {
    GradingReport rep;
    rep.weight = chart_ ? chart_->zero_weight() : Weight{};
    std::set<Grading> classes;
    for (const auto& [m, c] : terms_)
        classes.insert(Grading{mono_parity(*chart_, m), mono_weight(*chart_, m)});
    rep.classes.assign(classes.begin(), classes.end());
    if (!rep.classes.empty()) {
        rep.parity = rep.classes.front().parity;
        rep.weight = rep.classes.front().weight;
        for (const auto& g : rep.classes) {
            if (g.parity != rep.parity) rep.parity_homogeneous = false;
            if (g.weight != rep.weight) rep.weight_homogeneous = false;
        }
    }
    return rep;
}

std::optional<int> Poly::parity() const {
    auto rep = grading();
    if (!rep.parity_homogeneous) return std::nullopt;
    return rep.parity;
}

std::optional<Weight> Poly::weight() const {
    auto rep = grading();
    if (!rep.weight_homogeneous) return std::nullopt;
    return rep.weight;
}

std::optional<int> Poly::weight0() const {
    std::optional<int> w;
    for (const auto& [m, c] : terms_) {
        Weight mw = mono_weight(*chart_, m);
        if (w && *w != mw[0]) return std::nullopt;
        w = mw[0];
    }
    return w ? w : std::optional<int>(0);
}

std::pair<Poly, Poly> Poly::parity_split() const {
    Poly even(chart_), odd(chart_);
    for (const auto& [m, c] : terms_)
        (mono_parity(*chart_, m) ? odd : even).add_term(m, c);
    return {even, odd};
}

Poly Poly::restrict_to_base() const {
    if (!chart_->has_pairs())
        throw EngineError("restrict_to_base: chart '" + chart_->name() + "' has no pairing");
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        bool base = true;
        for (int i = 0; i < chart_->size(); ++i)
            if (chart_->is_antimomentum(i) && m.e[static_cast<size_t>(i)] != 0) {
                base = false;
                break;
            }
        if (base) r.add_term(m, c);
    }
    return r;
}

bool Poly::is_antimomentum_free() const {
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < chart_->size(); ++i)
            if (chart_->is_antimomentum(i) && m.e[static_cast<size_t>(i)] != 0) return false;
    return true;
}

int Poly::antimomentum_degree() const {
    int deg = 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (int i = 0; i < chart_->size(); ++i)
            if (chart_->is_antimomentum(i)) d += m.e[static_cast<size_t>(i)];
        deg = std::max(deg, d);
    }
    return deg;
}

Poly Poly::antimomentum_part(int k) const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (int i = 0; i < chart_->size(); ++i)
            if (chart_->is_antimomentum(i)) d += m.e[static_cast<size_t>(i)];
        if (d == k) r.add_term(m, c);
    }
    return r;
}

namespace {

// img^e for a single-term image; exact Laurent inverse for e < 0.
Poly term_power(const Poly& img, int e, const std::string& var_name) {
    const ChartPtr& target = img.chart();
    if (e == 0) return Poly::constant(target, 1);
    if (e > 0) {
        Poly acc = img;
        for (int k = 1; k < e; ++k) acc = acc * img;
        return acc;
    }
    if (img.term_count() != 1)
        throw EngineError("substitute: negative power of '" + var_name +
                          "' needs a single-term invertible image");
    const auto& [m, c] = *img.terms().begin();
    for (int i = 0; i < target->size(); ++i)
        if (m.e[static_cast<size_t>(i)] != 0 && !target->var(i).invertible)
            throw EngineError("substitute: image of '" + var_name +
                              "' is not invertible on the target chart");
    Monomial inv;
    inv.e.resize(m.e.size());
    for (size_t i = 0; i < m.e.size(); ++i) inv.e[i] = static_cast<int16_t>(-m.e[i] * -e);
    // coefficient c^e with e < 0
    Rational cc(1);
    for (int k = 0; k < -e; ++k) cc *= c;
    Poly r(target);
    r.add_term(inv, Rational(1) / cc);
    return r;
}

} // namespace

Poly Poly::substitute(const ChartPtr& target, const std::map<int, Poly>& images) const {
    const Chart& chart = *chart_;
    std::vector<Poly> img(static_cast<size_t>(chart.size()));
    std::vector<char> have(static_cast<size_t>(chart.size()), 0);
    for (const auto& [i, p] : images) {
        require_same_chart(target, p.chart());
        auto pp = p.parity();
        if (!p.is_zero() && (!pp || *pp != chart.var(i).parity))
            throw EngineError("substitute: image of '" + chart.var(i).name +
                              "' does not match the variable's parity");
        img[static_cast<size_t>(i)] = p;
        have[static_cast<size_t>(i)] = 1;
    }
    auto image_of = [&](int i) -> const Poly& {
        if (!have[static_cast<size_t>(i)]) {
            int j = target->index_of(chart.var(i).name);
            if (j < 0 || target->var(j).parity != chart.var(i).parity)
                throw EngineError("substitute: no image for variable '" + chart.var(i).name + "'");
            img[static_cast<size_t>(i)] = Poly::variable(target, chart.var(i).name);
            have[static_cast<size_t>(i)] = 1;
        }
        return img[static_cast<size_t>(i)];
    };

    Poly result(target);
    for (const auto& [m, c] : terms_) {
        Poly acc = Poly::constant(target, c);
        for (int i = 0; i < chart.size() && !acc.is_zero(); ++i) {
            int e = m.e[static_cast<size_t>(i)];
            if (!e) continue;
            acc = acc * term_power(image_of(i), e, chart.var(i).name);
        }
        result += acc;
    }
    return result;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        std::string ms = mono_str(*chart_, it->first);
        if (ms.empty())
            os << it->second.str();
        else if (it->second == 1)
            os << ms;
        else
            os << it->second.str() << " * " << ms;
    }
    return os.str();
}

} // namespace hk
