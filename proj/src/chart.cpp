#include "hk/chart.hpp"

#include <sstream>

namespace hk {

std::string weight_str(const Weight& w) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << ',';
        os << w[i];
    }
    os << ')';
    return os.str();
}

ChartPtr Chart::create(std::string name, int gradings, std::vector<VariableSpec> vars,
                       std::vector<std::pair<std::string, std::string>> pairs) {
    if (gradings < 1) throw EngineError("chart '" + name + "': grading count must be >= 1");
    auto chart = std::shared_ptr<Chart>(new Chart());
    chart->name_ = std::move(name);
    chart->gradings_ = gradings;
    chart->vars_ = std::move(vars);

    const int n = chart->size();
    for (int i = 0; i < n; ++i) {
        const auto& v = chart->vars_[static_cast<size_t>(i)];
        if (v.name.empty()) throw EngineError("chart '" + chart->name_ + "': empty variable name");
        if (v.parity != 0 && v.parity != 1)
            throw EngineError("chart '" + chart->name_ + "': variable '" + v.name + "' has bad parity");
        if (static_cast<int>(v.weight.size()) != gradings)
            throw EngineError("chart '" + chart->name_ + "': variable '" + v.name +
                              "' weight length does not match grading count");
        if (v.invertible && v.parity != 0)
            throw EngineError("chart '" + chart->name_ + "': odd variable '" + v.name +
                              "' cannot be invertible");
        if (!chart->index_.emplace(v.name, i).second)
            throw EngineError("chart '" + chart->name_ + "': duplicate variable '" + v.name + "'");
        if (v.parity == 1) chart->odd_idx_.push_back(i);
    }

    chart->partner_.assign(static_cast<size_t>(n), -1);
    chart->is_anti_.assign(static_cast<size_t>(n), 0);
    for (const auto& [base_name, anti_name] : pairs) {
        int b = chart->index_of(base_name);
        int a = chart->index_of(anti_name);
        if (b < 0 || a < 0)
            throw EngineError("chart '" + chart->name_ + "': pair references unknown variable");
        if (b == a) throw EngineError("chart '" + chart->name_ + "': variable paired with itself");
        if (chart->partner_[static_cast<size_t>(b)] != -1 || chart->partner_[static_cast<size_t>(a)] != -1)
            throw EngineError("chart '" + chart->name_ + "': variable in more than one pair");
        const auto& bv = chart->vars_[static_cast<size_t>(b)];
        const auto& av = chart->vars_[static_cast<size_t>(a)];
        if (((bv.parity + 1) & 1) != av.parity)
            throw EngineError("chart '" + chart->name_ + "': pair (" + bv.name + "," + av.name +
                              ") must have opposite parities");
        chart->partner_[static_cast<size_t>(b)] = a;
        chart->partner_[static_cast<size_t>(a)] = b;
        chart->is_anti_[static_cast<size_t>(a)] = 1;
        chart->pair_bases_.push_back(b);
    }
    return chart;
}

int Chart::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? -1 : it->second;
}

int Chart::require(std::string_view name) const {
    int i = index_of(name);
    if (i < 0)
        throw EngineError("chart '" + name_ + "': unknown variable '" + std::string(name) + "'");
    return i;
}

} // namespace hk
