#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace planefn {

/// A named, serializable rule n ↦ x_n for n = 1, 2, ...
///
/// Independent rules:  "2^-n", "4^-n", "geometric:q" (q^n), "power:p" (n^-p),
/// "const:c", and explicit tables.
/// Rules relative to a base sequence s (used for dent widths):
/// "s2n-1" (s_{2n-1}), "2s" (2 s_{2n-1}), "n*s" (n s_{2n-1}), "sqrt" (sqrt(s_{2n-1})).
class SequenceRule {
public:
    enum class Kind { Geometric, Power, Constant, Table, BaseOdd, BaseOddScaled, BaseOddLinear, BaseOddSqrt };

    SequenceRule() = default;

    /// Parse a preset name; throws ParameterError for unknown names.
    static SequenceRule parse(const std::string& text);
    static SequenceRule table(std::vector<double> values);

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    const std::vector<double>& table_values() const { return table_; }
    bool depends_on_base() const;

    /// x_n for n >= 1.  Base-relative rules require `base`.
    double at(int n, const SequenceRule* base = nullptr) const;
    std::vector<double> values(int count, const SequenceRule* base = nullptr) const;

    std::string to_string() const;

private:
    Kind kind_ = Kind::Constant;
    double param_ = 0.0;
    std::vector<double> table_;
};

void to_json(nlohmann::json& j, const SequenceRule& r);
void from_json(const nlohmann::json& j, SequenceRule& r);

}  // namespace planefn
