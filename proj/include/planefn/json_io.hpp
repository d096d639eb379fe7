#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace planefn {

/// Deterministic JSON text: keys sorted, floating-point numbers printed with
/// 17 significant digits, two-space indentation (or compact when indent < 0).
std::string dump_json(const nlohmann::json& j, int indent = 2);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace planefn
