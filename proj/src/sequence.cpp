#include "planefn/sequence.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"

namespace planefn {

namespace {

double parse_number(const std::string& text, const std::string& whole) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParameterError("bad number in sequence rule '" + whole + "'");
    }
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

SequenceRule SequenceRule::parse(const std::string& text) {
    SequenceRule r;
    auto after = [&](const std::string& prefix) { return text.substr(prefix.size()); };
    if (text == "2^-n") {
        r.kind_ = Kind::Geometric;
        r.param_ = 0.5;
    } else if (text == "4^-n") {
        r.kind_ = Kind::Geometric;
        r.param_ = 0.25;
    } else if (text.rfind("geometric:", 0) == 0) {
        r.kind_ = Kind::Geometric;
        r.param_ = parse_number(after("geometric:"), text);
        if (!(r.param_ > 0.0 && r.param_ < 1.0)) throw ParameterError("geometric ratio must lie in (0,1)");
    } else if (text.rfind("power:", 0) == 0) {
        r.kind_ = Kind::Power;
        r.param_ = parse_number(after("power:"), text);
        if (!(r.param_ > 0.0)) throw ParameterError("power exponent must be positive");
    } else if (text.rfind("const:", 0) == 0) {
        r.kind_ = Kind::Constant;
        r.param_ = parse_number(after("const:"), text);
    } else if (text == "s2n-1") {
        r.kind_ = Kind::BaseOdd;
    } else if (text == "2s") {
        r.kind_ = Kind::BaseOddScaled;
        r.param_ = 2.0;
    } else if (text == "n*s") {
        r.kind_ = Kind::BaseOddLinear;
    } else if (text == "sqrt") {
        r.kind_ = Kind::BaseOddSqrt;
    } else {
        throw ParameterError("unknown sequence rule '" + text + "'");
    }
    return r;
}

SequenceRule SequenceRule::table(std::vector<double> values) {
    if (values.empty()) throw ParameterError("sequence table must be non-empty");
    SequenceRule r;
    r.kind_ = Kind::Table;
    r.table_ = std::move(values);
    return r;
}

bool SequenceRule::depends_on_base() const {
    return kind_ == Kind::BaseOdd || kind_ == Kind::BaseOddScaled || kind_ == Kind::BaseOddLinear ||
           kind_ == Kind::BaseOddSqrt;
}

double SequenceRule::at(int n, const SequenceRule* base) const {
    if (n < 1) throw ParameterError("sequence index must be >= 1");
    if (depends_on_base()) {
        if (!base) throw ParameterError("rule '" + to_string() + "' needs a base sequence");
        if (base->depends_on_base()) throw ParameterError("base sequence must be independent");
        const double s = base->at(2 * n - 1);
        switch (kind_) {
            case Kind::BaseOdd: return s;
            case Kind::BaseOddScaled: return param_ * s;
            case Kind::BaseOddLinear: return n * s;
            case Kind::BaseOddSqrt: return std::sqrt(s);
            default: break;
        }
    }
    switch (kind_) {
        case Kind::Geometric: return std::pow(param_, n);
        case Kind::Power: return std::pow(static_cast<double>(n), -param_);
        case Kind::Constant: return param_;
        case Kind::Table:
            if (static_cast<std::size_t>(n) > table_.size())
                throw ParameterError("sequence table too short for index " + std::to_string(n));
            return table_[n - 1];
        default: break;
    }
    throw ParameterError("unreachable sequence kind");
}

std::vector<double> SequenceRule::values(int count, const SequenceRule* base) const {
    std::vector<double> out;
    out.reserve(count);
    for (int n = 1; n <= count; ++n) out.push_back(at(n, base));
    return out;
}

std::string SequenceRule::to_string() const {
    switch (kind_) {
        case Kind::Geometric:
            if (param_ == 0.5) return "2^-n";
            if (param_ == 0.25) return "4^-n";
            return "geometric:" + format_number(param_);
        case Kind::Power: return "power:" + format_number(param_);
        case Kind::Constant: return "const:" + format_number(param_);
        case Kind::Table: return "table";
        case Kind::BaseOdd: return "s2n-1";
        case Kind::BaseOddScaled: return "2s";
        case Kind::BaseOddLinear: return "n*s";
        case Kind::BaseOddSqrt: return "sqrt";
    }
    return "?";
}

void to_json(nlohmann::json& j, const SequenceRule& r) {
    if (r.kind() == SequenceRule::Kind::Table) {
        j = nlohmann::json::object();
        j["table"] = r.table_values();
    } else {
        j = r.to_string();
    }
}

void from_json(const nlohmann::json& j, SequenceRule& r) {
    if (j.is_string()) {
        r = SequenceRule::parse(j.get<std::string>());
    } else if (j.is_object() && j.contains("table")) {
        r = SequenceRule::table(j.at("table").get<std::vector<double>>());
    } else if (j.is_array()) {
        r = SequenceRule::table(j.get<std::vector<double>>());
    } else {
        throw ParameterError("sequence rule must be a preset string or {\"table\": [...]}");
    }
}

}  // namespace planefn
