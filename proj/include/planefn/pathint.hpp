#pragma once

#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planefn/expr.hpp"
#include "planefn/geom.hpp"
#include "planefn/planeset.hpp"

namespace planefn {

struct QuadratureOptions {
    double tol = 1e-9;
    int max_depth = 20;
};

struct IntegralResult {
    Complex value;
    double error_estimate = 0.0;
};

/// ∫_γ f(z) dz by adaptive Gauss–Legendre (8 nodes) on every segment.
IntegralResult path_integral(const FunctionExpr& f, const PolyPath& path, const QuadratureOptions& opt = {});

struct FtcReport {
    Complex integral;
    Complex delta;    ///< f(γ⁺) − f(γ⁻)
    double defect;    ///< |integral − delta|
    double error_estimate;
    double tol;
    bool pass;        ///< defect ≤ tol · (1 + |delta|)
};

FtcReport ftc_check(const FunctionExpr& f, const FunctionExpr& fprime, const PolyPath& path, double tol = 1e-9);

/// A function together with a candidate F-derivative.
struct FDerivPair {
    FunctionExpr f;
    FunctionExpr g;

    /// Pair (f, f') with the symbolic derivative.
    static FDerivPair of(const FunctionExpr& f) { return {f, f.derivative()}; }
};

/// A finite family of admissible paths.  `effective()` records whether the
/// union of the images came within `resolution` of every construction point
/// of the set it was checked against.
class PathFamily {
public:
    explicit PathFamily(std::vector<PolyPath> paths) : paths_(std::move(paths)) {}
    PathFamily(std::vector<PolyPath> paths, const PlaneSet& set, double resolution);

    const std::vector<PolyPath>& paths() const { return paths_; }
    bool effective() const { return effective_; }
    double resolution() const { return resolution_; }

private:
    std::vector<PolyPath> paths_;
    bool effective_ = false;
    double resolution_ = 0.0;
};

struct PathCheck {
    std::size_t path_index;
    double s0, s1;  ///< arc-length interval; [0, |γ|] for the whole path
    FtcReport ftc;
};

struct FamilyReport {
    bool pass = true;
    double max_defect = 0.0;
    std::vector<PathCheck> checks;
};

struct FamilyOptions {
    double tol = 1e-9;
    int subpaths = 8;     ///< random subpaths per family path
    unsigned seed = 0;
};

FamilyReport verify_fderivative(const FDerivPair& pair, const PathFamily& family, const FamilyOptions& opt = {});

/// Verifies (f1 f2, f1 g2 + g1 f2).  PreconditionError when either input pair
/// fails on the family.
FamilyReport verify_product_rule(const FDerivPair& p1, const FDerivPair& p2, const PathFamily& family,
                                 const FamilyOptions& opt = {});

/// Maximal arc-length intervals of Γ on which the pair passes the FTC test
/// on every grid cell of an M-cell uniform grid; adjacent passing cells merge.
std::vector<std::pair<double, double>> interval_decomposition(const FunctionExpr& f, const FunctionExpr& g,
                                                              const PolyPath& path, double tol, int M);

/// Sample sets used for sup norms: every construction point of the set plus
/// `count` pseudo-random points of the set (area samples for regions, points
/// on arcs for skeletons).
std::vector<Point> sample_points(const PlaneSet& set, int count = 512, unsigned seed = 0);

double sup_norm(const FunctionExpr& f, std::span<const Point> samples);

/// |f|_X + |f'|_X over the samples: a lower bound of the D^(1) norm.
double diff_norm(const FunctionExpr& f, const FunctionExpr& fprime, std::span<const Point> samples);
double diff_norm(const FunctionExpr& f, const FunctionExpr& fprime, const PlaneSet& set, int count = 512,
                 unsigned seed = 0);

/// |f(z) − f(w)| / |z − w|; DomainError when z = w.
double lipschitz_quotient(const FunctionExpr& f, Point z, Point w);

/// Max Lipschitz quotient over all pairs of the samples.
double lip_seminorm(const FunctionExpr& f, std::span<const Point> samples);
double lip_seminorm(const FunctionExpr& f, const PlaneSet& set, int count = 128, unsigned seed = 0);

/// Elements (f, g) of the semidirect product with
/// (f1, g1)(f2, g2) = (f1 f2, f1 g2 + g1 f2).
struct SemidirectElement {
    FunctionExpr f;
    FunctionExpr g;
};

SemidirectElement semidirect_multiply(const SemidirectElement& a, const SemidirectElement& b);
double semidirect_norm(const SemidirectElement& a, std::span<const Point> samples);
/// ι(p) = (p, p').
SemidirectElement iota(const FunctionExpr& p);

void to_json(nlohmann::json& j, const FtcReport& r);
void to_json(nlohmann::json& j, const FamilyReport& r);

}  // namespace planefn
