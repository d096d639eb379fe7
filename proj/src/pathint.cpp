#include "planefn/pathint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"

namespace planefn {

namespace {

constexpr std::array<double, 4> kNodes{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                       0.9602898564975363};
constexpr std::array<double, 4> kWeights{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                         0.1012285362903763};

struct Panel {
    Complex value;
    double magnitude;
};

// Gauss–Legendre on the parameter interval [u0, u1] of z = a + u d.
Panel gauss8(const FunctionExpr& f, Point a, Point d, double u0, double u1) {
    const double h = 0.5 * (u1 - u0), c = 0.5 * (u0 + u1);
    Complex sum = 0.0;
    double mag = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i)
        for (double sgn : {-1.0, 1.0}) {
            const Complex v = f(a + (c + sgn * h * kNodes[i]) * d);
            sum += kWeights[i] * v;
            mag += kWeights[i] * std::abs(v);
        }
    return {sum * h * d, mag * h * std::abs(d)};
}

void adaptive(const FunctionExpr& f, Point a, Point d, double u0, double u1, const Panel& whole, double tol,
              int depth, int max_depth, Complex& acc, double& err) {
    const double m = 0.5 * (u0 + u1);
    const Panel L = gauss8(f, a, d, u0, m), R = gauss8(f, a, d, m, u1);
    const Complex both = L.value + R.value;
    const double diff = std::abs(both - whole.value);
    const double floor = 1e-14 * (L.magnitude + R.magnitude);
    if (diff <= std::max(tol, floor) || depth >= max_depth) {
        acc += both;
        err += diff;
        return;
    }
    adaptive(f, a, d, u0, m, L, 0.5 * tol, depth + 1, max_depth, acc, err);
    adaptive(f, a, d, m, u1, R, 0.5 * tol, depth + 1, max_depth, acc, err);
}

}  // namespace

IntegralResult path_integral(const FunctionExpr& f, const PolyPath& path, const QuadratureOptions& opt) {
    if (!(opt.tol > 0.0)) throw ParameterError("path_integral: tol must be positive");
    IntegralResult r{0.0, 0.0};
    const auto& v = path.vertices();
    const double total = path.length();
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const Point a = v[k], d = v[k + 1] - v[k];
        if (auto hit = f.branch_cut_crossing(v[k], v[k + 1]))
            throw DomainError("path_integral: the path crosses a branch cut", *hit);
        const double tol = opt.tol * path.segment_length(k) / total;
        const Panel whole = gauss8(f, a, d, 0.0, 1.0);
        adaptive(f, a, d, 0.0, 1.0, whole, tol, 0, opt.max_depth, r.value, r.error_estimate);
    }
    return r;
}

FtcReport ftc_check(const FunctionExpr& f, const FunctionExpr& fprime, const PolyPath& path, double tol) {
    if (!(tol > 0.0)) throw ParameterError("ftc_check: tol must be positive");
    const IntegralResult I = path_integral(fprime, path, {0.01 * tol, 20});
    FtcReport r;
    r.integral = I.value;
    r.delta = f(path.end()) - f(path.start());
    r.defect = std::abs(r.integral - r.delta);
    r.error_estimate = I.error_estimate;
    r.tol = tol;
    r.pass = r.defect <= tol * (1.0 + std::abs(r.delta));
    return r;
}

PathFamily::PathFamily(std::vector<PolyPath> paths, const PlaneSet& set, double resolution)
    : paths_(std::move(paths)), resolution_(resolution) {
    effective_ = !paths_.empty();
    for (Point p : set.construction_points()) {
        bool near = false;
        for (const auto& path : paths_) {
            const auto& v = path.vertices();
            for (std::size_t k = 0; k + 1 < v.size() && !near; ++k) near = segment_distance(p, v[k], v[k + 1]) <= resolution;
            if (near) break;
        }
        if (!near) {
            effective_ = false;
            break;
        }
    }
}

FamilyReport verify_fderivative(const FDerivPair& pair, const PathFamily& family, const FamilyOptions& opt) {
    FamilyReport rep;
    std::mt19937_64 rng(opt.seed);
    for (std::size_t i = 0; i < family.paths().size(); ++i) {
        const PolyPath& path = family.paths()[i];
        const double L = path.length();
        auto record = [&](double s0, double s1, const PolyPath& p) {
            PathCheck c{i, s0, s1, ftc_check(pair.f, pair.g, p, opt.tol)};
            rep.pass = rep.pass && c.ftc.pass;
            rep.max_defect = std::max(rep.max_defect, c.ftc.defect);
            rep.checks.push_back(std::move(c));
        };
        record(0.0, L, path);
        std::uniform_real_distribution<double> U(0.0, L);
        for (int k = 0; k < opt.subpaths; ++k) {
            double s0 = U(rng), s1 = U(rng);
            if (s0 > s1) std::swap(s0, s1);
            if (!(s1 > s0)) continue;
            const PolyPath sub = subpath(path, s0, s1);
            record(s0, s1, sub);
        }
    }
    return rep;
}

FamilyReport verify_product_rule(const FDerivPair& p1, const FDerivPair& p2, const PathFamily& family,
                                 const FamilyOptions& opt) {
    if (!verify_fderivative(p1, family, opt).pass)
        throw PreconditionError("verify_product_rule: first pair is not an F-derivative pair on the family");
    if (!verify_fderivative(p2, family, opt).pass)
        throw PreconditionError("verify_product_rule: second pair is not an F-derivative pair on the family");
    const FDerivPair prod{p1.f * p2.f, p1.f * p2.g + p1.g * p2.f};
    return verify_fderivative(prod, family, opt);
}

std::vector<std::pair<double, double>> interval_decomposition(const FunctionExpr& f, const FunctionExpr& g,
                                                              const PolyPath& path, double tol, int M) {
    if (M < 1) throw ParameterError("interval_decomposition: grid size must be >= 1");
    const double L = path.length();
    auto grid = [&](int k) { return k == M ? L : L * static_cast<double>(k) / M; };
    std::vector<std::pair<double, double>> out;
    bool open = false;
    for (int k = 0; k < M; ++k) {
        const double s0 = grid(k), s1 = grid(k + 1);
        const bool pass = ftc_check(f, g, subpath(path, s0, s1), tol).pass;
        if (pass && open) {
            out.back().second = s1;
        } else if (pass) {
            out.push_back({s0, s1});
            open = true;
        } else {
            open = false;
        }
    }
    return out;
}

std::vector<Point> sample_points(const PlaneSet& set, int count, unsigned seed) {
    std::vector<Point> out;
    const auto [lo, hi] = set.bounds();
    const double tol = 1e-9 * std::abs(hi - lo);
    for (Point p : set.construction_points())
        if (contains(set, p, tol)) out.push_back(p);
    std::mt19937_64 rng(seed);
    if (set.is_region()) {
        std::uniform_real_distribution<double> X(lo.real(), hi.real()), Y(lo.imag(), hi.imag());
        for (long attempts = 0, got = 0; got < count && attempts < 50L * count; ++attempts) {
            const Point p(X(rng), Y(rng));
            if (contains(set, p)) {
                out.push_back(p);
                ++got;
            }
        }
    } else {
        const auto& arcs = set.as_skeleton().arcs;
        std::vector<double> w;
        for (const auto& a : arcs) w.push_back(a.length());
        std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (int k = 0; k < count; ++k) {
            const auto& a = arcs[pick(rng)];
            out.push_back(a.at(U(rng) * a.length()));
        }
    }
    return out;
}

double sup_norm(const FunctionExpr& f, std::span<const Point> samples) {
    double m = 0.0;
    for (Point p : samples) m = std::max(m, std::abs(f(p)));
    return m;
}

double diff_norm(const FunctionExpr& f, const FunctionExpr& fprime, std::span<const Point> samples) {
    return sup_norm(f, samples) + sup_norm(fprime, samples);
}

double diff_norm(const FunctionExpr& f, const FunctionExpr& fprime, const PlaneSet& set, int count, unsigned seed) {
    const auto s = sample_points(set, count, seed);
    return diff_norm(f, fprime, s);
}

double lipschitz_quotient(const FunctionExpr& f, Point z, Point w) {
    if (z == w) throw DomainError("lipschitz_quotient: z and w coincide", z);
    return std::abs(f(z) - f(w)) / std::abs(z - w);
}

double lip_seminorm(const FunctionExpr& f, std::span<const Point> samples) {
    std::vector<Complex> v;
    v.reserve(samples.size());
    for (Point p : samples) v.push_back(f(p));
    double m = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i] != samples[j]) m = std::max(m, std::abs(v[i] - v[j]) / std::abs(samples[i] - samples[j]));
    return m;
}

double lip_seminorm(const FunctionExpr& f, const PlaneSet& set, int count, unsigned seed) {
    const auto s = sample_points(set, count, seed);
    return lip_seminorm(f, s);
}

SemidirectElement semidirect_multiply(const SemidirectElement& a, const SemidirectElement& b) {
    return {a.f * b.f, a.f * b.g + a.g * b.f};
}

double semidirect_norm(const SemidirectElement& a, std::span<const Point> samples) {
    return sup_norm(a.f, samples) + sup_norm(a.g, samples);
}

SemidirectElement iota(const FunctionExpr& p) { return {p, p.derivative()}; }

namespace {
nlohmann::json cj(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }
}  // namespace

void to_json(nlohmann::json& j, const FtcReport& r) {
    j = {{"integral", cj(r.integral)}, {"delta", cj(r.delta)},        {"defect", r.defect},
         {"error_estimate", r.error_estimate}, {"tol", r.tol}, {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const FamilyReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"path", c.path_index}, {"s0", c.s0}, {"s1", c.s1}, {"defect", c.ftc.defect}, {"pass", c.ftc.pass}});
    j = {{"pass", r.pass}, {"max_defect", r.max_defect}, {"checks", checks}};
}

}  // namespace planefn
