#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"
#include "planefn/geodesic.hpp"
#include "planefn/json_io.hpp"
#include "planefn/planeset.hpp"
#include "planefn/qx.hpp"
#include "planefn/svg.hpp"
#include "planefn/verification.hpp"

using namespace planefn;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Accepts "x,y", "x y" or complex literals such as "1+2i", "-0.5i", "3".
Point parse_point(const std::string& text) {
    static const std::regex pair(R"(^\s*([-+0-9.eE]+)\s*[, ]\s*([-+0-9.eE]+)\s*$)");
    static const std::regex cplx(
        R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*(?:([-+])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*[ij])?\s*$)");
    static const std::regex pure_imag(R"(^\s*([-+]?)((?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*[ij]\s*$)");
    std::smatch m;
    try {
        if (std::regex_match(text, m, pair)) return {std::stod(m[1]), std::stod(m[2])};
        if (std::regex_match(text, m, pure_imag)) {
            const double mag = m[2].matched ? std::stod(m[2]) : 1.0;
            return {0.0, m[1] == "-" ? -mag : mag};
        }
        if (std::regex_match(text, m, cplx) && (m[1].matched || m[2].matched)) {
            const double re = m[1].matched ? std::stod(m[1]) : 0.0;
            double im = 0.0;
            if (m[2].matched) {
                im = m[3].matched ? std::stod(m[3]) : 1.0;
                if (m[2] == "-") im = -im;
            }
            return {re, im};
        }
    } catch (const std::exception&) {
    }
    throw UsageError("cannot parse point '" + text + "' (use x,y or a+bi)");
}

struct Common {
    std::optional<int> depth;
    std::optional<double> tol, oracle_pixel, slope_threshold;
    std::optional<unsigned> seed;
    std::string out, svg, config;
    json file;  // contents of --config
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--depth", c.depth, "Construction depth N")->check(CLI::PositiveNumber);
    app->add_option("--tol", c.tol, "Quadrature / FTC tolerance")->check(CLI::PositiveNumber);
    app->add_option("--oracle-pixel", c.oracle_pixel, "Pixel size of the grid geodesic oracle")
        ->check(CLI::PositiveNumber);
    app->add_option("--slope-threshold", c.slope_threshold, "Log-log slope threshold of the growth rule")
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", c.seed, "Seed for randomized suites");
    app->add_option("--out", c.out, "Write JSON here instead of stdout");
    app->add_option("--svg", c.svg, "Also write an SVG drawing");
    app->add_option("--config", c.config, "JSON file with defaults; command-line flags win");
}

template <class T>
void fill_from(std::optional<T>& slot, const json& file, const char* key) {
    if (!slot && file.contains(key)) slot = file.at(key).get<T>();
}

void resolve_config(Common& c) {
    if (c.config.empty()) return;
    c.file = read_json_file(c.config);
    if (!c.file.is_object()) throw ParameterError("config file must hold a JSON object");
    fill_from(c.depth, c.file, "depth");
    fill_from(c.tol, c.file, "tol");
    fill_from(c.oracle_pixel, c.file, "oracle_pixel");
    fill_from(c.slope_threshold, c.file, "slope_threshold");
    fill_from(c.seed, c.file, "seed");
    if (c.out.empty() && c.file.contains("out")) c.out = c.file.at("out").get<std::string>();
    if (c.svg.empty() && c.file.contains("svg")) c.svg = c.file.at("svg").get<std::string>();
    if ((c.depth && *c.depth < 1) || (c.tol && *c.tol <= 0) || (c.oracle_pixel && *c.oracle_pixel <= 0) ||
        (c.slope_threshold && *c.slope_threshold <= 0))
        throw ParameterError("config: depth must be >= 1 and tolerances positive");
}

void emit(const Common& c, const json& j) {
    const std::string text = dump_json(j) + "\n";
    if (c.out.empty()) std::cout << text;
    else write_text_file(c.out, text);
}

GrowthConfig growth_config(const Common& c) {
    GrowthConfig g;
    if (c.slope_threshold) g.slope_threshold = *c.slope_threshold;
    return g;
}

PlaneSet load_set(const std::string& path, const Common& c) {
    json j = read_json_file(path);
    if (c.depth && j.contains("kind")) j["depth"] = *c.depth;
    return planeset_from_json(j);
}

// ---------------------------------------------------------------------------

struct GalleryCmd {
    std::string kind;
    std::optional<std::string> r, s, y, v;
    std::optional<double> width_factor;
    std::optional<int> chords;
};

int run_gallery(const GalleryCmd& g, const Common& c) {
    const GalleryKind kind = parse_gallery_kind(g.kind);
    GalleryParams p = c.file.contains("params") ? gallery_params_from_json(kind, c.file.at("params"))
                                                : GalleryParams{};
    if (g.r) p.r = SequenceRule::parse(*g.r);
    if (g.s) p.s = SequenceRule::parse(*g.s);
    if (g.y) p.y = SequenceRule::parse(*g.y);
    if (g.v) p.v = SequenceRule::parse(*g.v);
    if (g.width_factor) p.width_factor = *g.width_factor;
    if (g.chords) p.chords_per_quarter = *g.chords;
    const PlaneSet set = materialize(kind, p, c.depth.value_or(6));
    json j = set;
    emit(c, j);
    if (!c.svg.empty()) write_text_file(c.svg, to_svg(set));
    return kExitPass;
}

int run_geodesic(const std::string& setfile, const std::string& zs, const std::string& ws, const Common& c) {
    const PlaneSet set = load_set(setfile, c);
    const Point z = parse_point(zs), w = parse_point(ws);
    const GeodesicResult r = geodesic_distance(set, z, w);
    json j = r;
    emit(c, j);
    if (!c.svg.empty()) {
        SvgStyle style;
        style.overlay.push_back(r.vertices);
        write_text_file(c.svg, to_svg(set, style));
    }
    return kExitPass;
}

int run_verify(const std::string& suite, const Common& c) {
    SuiteConfig cfg;
    cfg.depth = c.depth;
    if (c.tol) cfg.tol = *c.tol;
    if (c.oracle_pixel) cfg.oracle_pixel = *c.oracle_pixel;
    if (c.slope_threshold) cfg.slope_threshold = *c.slope_threshold;
    if (c.seed) cfg.seed = *c.seed;
    SuiteResult r = run_suite(suite, cfg);
    json j = r;
    j.erase("seconds");  // keeps the output deterministic
    emit(c, j);
    for (const auto& row : r.rows)
        std::fprintf(stderr, "%s  %s%s%s\n", row.pass ? "PASS" : "FAIL", row.name.c_str(),
                     row.detail.empty() ? "" : "  ", row.detail.c_str());
    return r.pass ? kExitPass : kExitFail;
}

Point default_probe(const PlaneSet& set) {
    if (set.features().focus) return *set.features().focus;
    if (auto sc = star_centre(set)) return *sc;
    return set.construction_points().front();
}

int run_report(const std::string& setfile, const std::vector<std::string>& probes, const Common& c) {
    const PlaneSet set = load_set(setfile, c);
    std::vector<Point> zs;
    for (const auto& p : probes) zs.push_back(parse_point(p));
    if (zs.empty()) zs.push_back(default_probe(set));
    CompletenessConfig cfg;
    cfg.growth = growth_config(c);
    const CompletenessReport rep = completeness_report(set, zs, cfg);
    json j = rep;
    emit(c, j);
    if (!c.svg.empty()) {
        SvgStyle style;
        for (const auto& pr : rep.probes)
            for (const auto& b : pr.bounds) style.overlay.push_back({pr.z, b.w});
        for (const auto& d : set.features().dents) style.overlay.push_back({d.w, d.a});
        write_text_file(c.svg, to_svg(set, style));
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plane sets, geodesics, F-derivatives and completeness checks"};
    app.require_subcommand(1);

    Common common;

    GalleryCmd gcmd;
    auto* gallery = app.add_subcommand("gallery", "Materialize a gallery set and write JSON/SVG");
    gallery->add_option("kind", gcmd.kind, "Gallery kind")->required()->check(CLI::IsMember(gallery_names()));
    gallery->add_option("--r", gcmd.r, "Dent width rule (dented square)");
    gallery->add_option("--s", gcmd.s, "Dent height rule (dented square)");
    gallery->add_option("--y", gcmd.y, "Crossing heights (crossed square)");
    gallery->add_option("--v", gcmd.v, "Crossing heights (triangle arcs)");
    gallery->add_option("--width-factor", gcmd.width_factor, "Half-width over gap (triangle arcs)");
    gallery->add_option("--chords", gcmd.chords, "Chords per quarter circle")->check(CLI::PositiveNumber);
    add_common(gallery, common);

    std::string setfile, zs, ws;
    auto* geodesic = app.add_subcommand("geodesic", "Geodesic distance between two points of a set");
    geodesic->add_option("set", setfile, "Set JSON file")->required();
    geodesic->add_option("z", zs, "Start point")->required();
    geodesic->add_option("w", ws, "End point")->required();
    add_common(geodesic, common);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    add_common(verify, common);

    std::string report_set;
    std::vector<std::string> probes;
    auto* report = app.add_subcommand("report", "Completeness report for a set");
    report->add_option("set", report_set, "Set JSON file")->required();
    report->add_option("--probe", probes, "Probe point (repeatable); default: the construction focus");
    add_common(report, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        resolve_config(common);
        if (gallery->parsed()) return run_gallery(gcmd, common);
        if (geodesic->parsed()) return run_geodesic(setfile, zs, ws, common);
        if (verify->parsed()) return run_verify(suite, common);
        return run_report(report_set, probes, common);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const UnreachableError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const PreconditionError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
