#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planefn/geom.hpp"

namespace planefn {

struct SuiteConfig {
    std::optional<int> depth;        ///< overrides the suite's default depth
    double tol = 1e-8;               ///< quadrature / FTC tolerance
    double oracle_pixel = 1.0 / 1024;
    double slope_threshold = 0.1;
    unsigned seed = 0;
};

struct CheckRow {
    std::string name;
    bool pass;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    bool pass = true;
    std::vector<CheckRow> rows;
    double seconds = 0.0;
};

/// "ftc", "product-rule", "zpow", "thm32", "cantor", "rsa", "dented".
std::vector<std::string> suite_names();

/// ParameterError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config = {});

/// Twenty polylines drawn from the gallery constructions.
std::vector<PolyPath> gallery_polyline_paths();

void to_json(nlohmann::json& j, const SuiteResult& r);

}  // namespace planefn
