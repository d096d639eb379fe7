#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planefn/geom.hpp"

namespace planefn {

class FunctionExpr;

/// One analytic piece of a piecewise-on-path function: active for arc-length
/// parameters in [t0, t1].  `df` overrides the symbolic derivative (needed for
/// pieces written with Re/Im, whose derivative along the path is known).
struct PathPiece;

/// Immutable expression tree for functions on plane sets.
///
/// Nodes: constant, z, sum, product, integer power, principal power a^alpha,
/// cosine, sine, real part, imaginary part, a piecewise-on-path table, and
/// the Cantor composition g(Re a).  Evaluation throws DomainError (carrying
/// the point) when a principal power meets the closed negative real axis,
/// a piecewise function is evaluated off its path, or the Cantor argument
/// leaves [0, 1].
class FunctionExpr {
public:
    enum class Kind { Const, Z, Add, Mul, Pow, PPow, Cos, Sin, Re, Im, Piecewise, Cantor };

    FunctionExpr();  // the constant 0
    FunctionExpr(Complex c);  // NOLINT: implicit constants read naturally in formulas

    static FunctionExpr z();
    static FunctionExpr constant(Complex c) { return FunctionExpr(c); }
    static FunctionExpr ppow(const FunctionExpr& base, Complex alpha);
    static FunctionExpr cos(const FunctionExpr& a);
    static FunctionExpr sin(const FunctionExpr& a);
    static FunctionExpr re(const FunctionExpr& a);
    static FunctionExpr im(const FunctionExpr& a);
    static FunctionExpr cantor(const FunctionExpr& a);
    /// Pieces are located by arc length of the nearest point of `path`
    /// within `tol` (default: 1e-9 times the path's bounding-box diagonal).
    static FunctionExpr piecewise(PolyPath path, std::vector<PathPiece> pieces, std::optional<double> tol = {});
    /// Polynomial sum c_k z^k.
    static FunctionExpr polynomial(const std::vector<Complex>& coeffs);

    friend FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b);
    friend FunctionExpr operator-(const FunctionExpr& a, const FunctionExpr& b);
    friend FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b);
    friend FunctionExpr operator-(const FunctionExpr& a);
    friend FunctionExpr pow(const FunctionExpr& a, int n);

    Kind kind() const;
    bool is_constant() const { return kind() == Kind::Const; }
    /// Value of a constant node.
    Complex constant_value() const;

    Complex operator()(Point p) const;
    FunctionExpr derivative() const;

    /// A point of the segment [a, b] where the base of some principal power
    /// meets the closed negative real axis, detected on `samples` + 1 equally
    /// spaced points (sign change of the imaginary part with negative real
    /// part, or a sample on the axis).  Piecewise subtrees are not inspected.
    std::optional<Point> branch_cut_crossing(Point a, Point b, int samples = 64) const;

    std::string to_string() const;

    struct Node;
    const Node& node() const { return *node_; }

private:
    explicit FunctionExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct PathPiece {
    double t0;
    double t1;
    FunctionExpr f;
    std::optional<FunctionExpr> df;
};

void to_json(nlohmann::json& j, const FunctionExpr& e);
FunctionExpr function_expr_from_json(const nlohmann::json& j);

}  // namespace planefn
