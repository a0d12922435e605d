#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hk/errors.hpp"

namespace hk {

// A weight is a small integer vector; component 0 is the scaling weight used
// by homogeneity checks, further components track auxiliary gradings (fibre
// degree, linear-structure degree, ...).
using Weight = std::vector<int>;

std::string weight_str(const Weight& w);

struct VariableSpec {
    std::string name;
    int parity = 0; // 0 even, 1 odd
    Weight weight;  // length == chart grading count
    bool invertible = false;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

// A chart is an ordered list of graded variables, optionally equipped with a
// conjugate pairing (base variable, antimomentum). Declaration order fixes the
// canonical monomial order everywhere. Charts are immutable and shared.
class Chart {
  public:
    static ChartPtr create(std::string name, int gradings, std::vector<VariableSpec> vars,
                           std::vector<std::pair<std::string, std::string>> pairs = {});

    const std::string& name() const { return name_; }
    int gradings() const { return gradings_; }
    int size() const { return static_cast<int>(vars_.size()); }
    const VariableSpec& var(int i) const { return vars_[static_cast<size_t>(i)]; }

    // -1 when the name is unknown.
    int index_of(std::string_view name) const;
    int require(std::string_view name) const; // throws on unknown name

    bool has_pairs() const { return !pair_bases_.empty(); }
    const std::vector<int>& pair_bases() const { return pair_bases_; }
    // Partner variable in the conjugate pairing, -1 when unpaired.
    int partner(int i) const { return partner_[static_cast<size_t>(i)]; }
    bool is_antimomentum(int i) const { return is_anti_[static_cast<size_t>(i)]; }

    const std::vector<int>& odd_indices() const { return odd_idx_; }

    Weight zero_weight() const { return Weight(static_cast<size_t>(gradings_), 0); }

  private:
    Chart() = default;

    std::string name_;
    int gradings_ = 1;
    std::vector<VariableSpec> vars_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> partner_;
    std::vector<char> is_anti_;
    std::vector<int> pair_bases_; // base indices, in declaration order
    std::vector<int> odd_idx_;
};

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a != b)
        throw EngineError("chart mismatch: '" + (a ? a->name() : "?") + "' vs '" +
                          (b ? b->name() : "?") + "'");
}

} // namespace hk
