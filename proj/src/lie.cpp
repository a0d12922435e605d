#include "hk/lie.hpp"

#include "hk/algebroid.hpp"
#include "hk/errors.hpp"
#include "hk/kirillov.hpp"
#include "hk/schouten.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <utility>

namespace hk {

namespace {

std::string one_term(const ChartPtr& K, const Monomial& m, const Rational& c) {
    Poly p(K);
    p.add_term(m, c);
    return p.str();
}

std::string num(int i) { return std::to_string(i); }

} // namespace

StructureConstants::StructureConstants(int dim) : dim_(dim) {
    if (dim < 1) throw EngineError("structure constants need a positive dimension");
    q_.assign(static_cast<size_t>(dim) * dim * dim, Rational(0));
}

const Rational& StructureConstants::q(int k, int i, int j) const {
    if (k < 0 || i < 0 || j < 0 || k >= dim_ || i >= dim_ || j >= dim_)
        throw EngineError("structure constant index out of range");
    return q_[static_cast<size_t>((k * dim_ + i) * dim_ + j)];
}

void StructureConstants::set(int k, int i, int j, const Rational& v) {
    if (k < 0 || i < 0 || j < 0 || k >= dim_ || i >= dim_ || j >= dim_)
        throw EngineError("structure constant index out of range");
    if (i == j && v != 0)
        throw EngineError("structure constants are skew: q(k,i,i) must vanish");
    q_[static_cast<size_t>((k * dim_ + i) * dim_ + j)] = v;
    q_[static_cast<size_t>((k * dim_ + j) * dim_ + i)] = -v;
}

StructureConstants StructureConstants::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw EngineError(std::string("structure constants: bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
        throw EngineError("structure constants: need an object with an integer 'dim'");
    const int n = j["dim"].get<int>();
    StructureConstants S(n);
    if (!j.contains("Q")) return S;
    if (!j["Q"].is_array())
        throw EngineError("structure constants: 'Q' must be an array");
    std::map<std::tuple<int, int, int>, bool> seen;
    for (const auto& entry : j["Q"]) {
        if (!entry.is_array() || entry.size() != 5)
            throw EngineError("structure constants: each entry is [i, j, k, num, den]");
        for (const auto& x : entry)
            if (!x.is_number_integer())
                throw EngineError("structure constants: entries must be integers");
        const int i = entry[0].get<int>(), jj = entry[1].get<int>(), k = entry[2].get<int>();
        const long long nu = entry[3].get<long long>(), de = entry[4].get<long long>();
        if (i < 1 || jj < 1 || k < 1 || i > n || jj > n || k > n)
            throw EngineError("structure constants: index out of range in entry");
        if (i >= jj)
            throw EngineError("structure constants: entries must have i < j");
        if (de == 0) throw EngineError("structure constants: zero denominator");
        if (!seen.emplace(std::make_tuple(i, jj, k), true).second)
            throw EngineError("structure constants: duplicate entry for (i, j, k)");
        S.set(k - 1, i - 1, jj - 1, Rational(nu, de));
    }
    return S;
}

StructureConstants StructureConstants::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EngineError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

bool jacobi_check(const StructureConstants& S) {
    const int n = S.dim();
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Rational sum(0);
                    for (int l = 0; l < n; ++l)
                        sum += S.q(m, i, l) * S.q(l, j, k) + S.q(m, j, l) * S.q(l, k, i) +
                               S.q(m, k, l) * S.q(l, i, j);
                    if (sum != 0) return false;
                }
    return true;
}

namespace {

std::mutex chart_cache_mutex;

ChartPtr cached_ce_chart(int dim, bool fibre) {
    if (dim < 1) throw EngineError("chart needs a positive dimension");
    std::lock_guard<std::mutex> lock(chart_cache_mutex);
    static std::map<std::pair<int, bool>, ChartPtr> cache;
    auto it = cache.find({dim, fibre});
    if (it != cache.end()) return it->second;

    std::vector<VariableSpec> vars;
    std::vector<std::pair<std::string, std::string>> pairs;
    const int g = fibre ? 3 : 2;
    auto w = [&](int a, int b, int c) {
        return fibre ? Weight{a, b, c} : Weight{a, c};
    };
    vars.push_back({"t", 0, w(1, 0, 0), true});
    for (int i = 1; i <= dim; ++i) vars.push_back({"y" + num(i), 0, w(0, 1, 0), false});
    vars.push_back({"ts", 1, w(0, 1, 1), false});
    for (int i = 1; i <= dim; ++i) vars.push_back({"xi" + num(i), 1, w(1, 0, 1), false});
    pairs.emplace_back("t", "ts");
    for (int i = 1; i <= dim; ++i) pairs.emplace_back("y" + num(i), "xi" + num(i));
    ChartPtr c = Chart::create((fibre ? "LA" : "CE") + num(dim), g, std::move(vars),
                               std::move(pairs));
    cache.emplace(std::make_pair(dim, fibre), c);
    return c;
}

} // namespace

ChartPtr ce_chart(int dim) { return cached_ce_chart(dim, false); }

ChartPtr algebroid_chart(int dim) { return cached_ce_chart(dim, true); }

Poly linear_structure(const StructureConstants& S) {
    const int n = S.dim();
    const ChartPtr K = ce_chart(n);
    Poly L = Poly::zero(K);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Rational& c = S.q(k, i, j);
                if (c == 0) continue;
                L += Poly::monomial(
                    K, {{"y" + num(k + 1), 1}, {"xi" + num(i + 1), 1}, {"xi" + num(j + 1), 1}},
                    c);
            }
    return L;
}

CEStructures ce_structures(const StructureConstants& S) {
    if (!jacobi_check(S))
        throw EngineError("structure constants fail the cyclic index identity");
    const int n = S.dim();
    const ChartPtr K = ce_chart(n);
    CEStructures out{linear_structure(S), Poly::zero(K)};
    for (int i = 1; i <= n; ++i)
        out.euler1 += Poly::monomial(K, {{"y" + num(i), 1}, {"xi" + num(i), 1}});
    return out;
}

std::vector<std::vector<Rational>> killing_form(const StructureConstants& S) {
    const int n = S.dim();
    std::vector<std::vector<Rational>> kil(static_cast<size_t>(n),
                                           std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational sum(0);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) sum += S.q(k, i, l) * S.q(l, j, k);
            kil[static_cast<size_t>(i)][static_cast<size_t>(j)] = sum;
        }
    return kil;
}

Poly cartan_cubic(const StructureConstants& S) {
    const int n = S.dim();
    const ChartPtr K = ce_chart(n);
    const auto kil = killing_form(S);
    Poly C = Poly::zero(K);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                Rational c(0);
                for (int l = 0; l < n; ++l)
                    c += kil[static_cast<size_t>(i)][static_cast<size_t>(l)] * S.q(l, k, j) +
                         kil[static_cast<size_t>(j)][static_cast<size_t>(l)] * S.q(l, k, i) +
                         kil[static_cast<size_t>(k)][static_cast<size_t>(l)] * S.q(l, i, j);
                if (c == 0) continue;
                // The displayed order xi_k xi_j xi_i; products supply the signs.
                C += Poly::variable(K, "xi" + num(k + 1)) * Poly::variable(K, "xi" + num(j + 1)) *
                     Poly::variable(K, "xi" + num(i + 1)) * (c / 6);
            }
    return C;
}

Poly cartan_3cocycle(const StructureConstants& S) {
    const ChartPtr K = ce_chart(S.dim());
    Poly C = cartan_cubic(S);
    Poly residue = schouten(linear_structure(S), C);
    if (!residue.is_zero()) {
        auto it = residue.terms().begin();
        throw EngineError("canonical cubic is not a cocycle; surviving term " +
                          one_term(K, it->first, it->second));
    }
    return C;
}

Poly assemble_completion(const StructureConstants& S, const Poly& C) {
    const int n = S.dim();
    const ChartPtr K = ce_chart(n);
    const KirillovFrame fr = kirillov_frame(K);

    Poly euler = Poly::zero(K);
    for (int i = 1; i <= n; ++i)
        euler += Poly::monomial(K, {{"y" + num(i), 1}, {"xi" + num(i), 1}});

    Poly P = Poly::monomial(K, {{"t", -1}}) * linear_structure(S);
    if (!C.is_zero()) {
        if (C.chart() != K)
            throw EngineError("cocycle must live on the scaling chart of the algebra");
        auto cp = C.parity();
        if (!cp || *cp != 1) throw EngineError("cocycle must be odd");
        const Chart& ch = *K;
        int m = -1;
        for (const auto& [mono, c] : C.terms()) {
            int anti = 0;
            for (int idx = 0; idx < ch.size(); ++idx) {
                const int e = mono.e[static_cast<size_t>(idx)];
                if (!e) continue;
                if (idx == fr.t || idx == fr.ts)
                    throw EngineError("cocycle may not involve the scaling pair; term " +
                                      one_term(K, mono, c));
                if (ch.is_antimomentum(idx)) anti += e;
            }
            if (m < 0)
                m = anti;
            else if (m != anti)
                throw EngineError("cocycle must have pure antimomentum degree; term " +
                                  one_term(K, mono, c));
        }
        P += Poly::monomial(K, {{"t", -m}}) * C * euler;
        P += Poly::monomial(K, {{"t", 1 - m}}) * C * Poly::variable(K, "ts");
    }
    return P;
}

Poly build_cocycle_jacobi(const StructureConstants& S, const Poly& C) {
    if (!jacobi_check(S))
        throw EngineError("structure constants fail the cyclic index identity");
    Poly P = assemble_completion(S, C);
    KirillovReport rep = validate_kirillov(P);
    if (!rep.ok)
        throw EngineError("completion failed the " + rep.failed + " check; witness " +
                          rep.witness);
    return P;
}

Poly build_algebroid(const StructureConstants& S, const Poly& C) {
    const Poly P = build_cocycle_jacobi(S, C);
    const ChartPtr AC = algebroid_chart(S.dim());
    const Poly A = P.substitute(AC, {});
    AlgebroidReport rep = validate_algebroid(A);
    if (!rep.ok)
        throw EngineError("fibre structure failed the " + rep.failed + " check; witness " +
                          rep.witness);
    return A;
}

} // namespace hk
