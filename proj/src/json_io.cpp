#include "planefn/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "planefn/errors.hpp"

namespace planefn {

namespace {

void emit(const nlohmann::json& j, int indent, int level, std::string& out) {
    const std::string nl = indent >= 0 ? "\n" : "";
    auto pad = [&](int l) { return indent >= 0 ? std::string(static_cast<std::size_t>(indent * l), ' ') : std::string(); };
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{" + nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += "," + nl;
                first = false;
                out += pad(level + 1) + nlohmann::json(it.key()).dump() + (indent >= 0 ? ": " : ":");
                emit(it.value(), indent, level + 1, out);
            }
            out += nl + pad(level) + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Short numeric arrays (points) stay on one line.
            bool flat = j.size() <= 2;
            for (const auto& e : j) flat = flat && e.is_number();
            if (flat || indent < 0) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += indent >= 0 ? ", " : ",";
                    emit(j[i], indent, level + 1, out);
                }
                out += "]";
                return;
            }
            out += "[" + nl;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += "," + nl;
                out += pad(level + 1);
                emit(j[i], indent, level + 1, out);
            }
            out += nl + pad(level) + "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        default: out += j.dump();
    }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
    std::string out;
    emit(j, indent, 0, out);
    return out;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError("invalid JSON in " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

}  // namespace planefn
