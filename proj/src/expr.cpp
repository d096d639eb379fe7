#include "planefn/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"
#include "planefn/planeset.hpp"
#include "planefn/polygon.hpp"

namespace planefn {

struct FunctionExpr::Node {
    Kind kind;
    Complex value{};           // Const: value; PPow: exponent
    int n = 0;                 // Pow
    std::vector<FunctionExpr> args;
    // Piecewise
    std::shared_ptr<const PolyPath> path;
    std::shared_ptr<const EdgeIndex> index;
    std::vector<PathPiece> pieces;
    double tol = 0.0;
};

namespace {

using Node = FunctionExpr::Node;
using Kind = FunctionExpr::Kind;

std::shared_ptr<Node> make(Kind k, std::vector<FunctionExpr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = std::move(args);
    return n;
}

bool is_const(const FunctionExpr& e, Complex c) { return e.is_constant() && e.constant_value() == c; }

}  // namespace

FunctionExpr::FunctionExpr() : FunctionExpr(Complex(0.0)) {}

FunctionExpr::FunctionExpr(Complex c) {
    auto n = make(Kind::Const);
    n->value = c;
    node_ = std::move(n);
}

FunctionExpr FunctionExpr::z() { return FunctionExpr(std::shared_ptr<const Node>(make(Kind::Z))); }

FunctionExpr::Kind FunctionExpr::kind() const { return node_->kind; }

Complex FunctionExpr::constant_value() const {
    if (node_->kind != Kind::Const) throw ParameterError("constant_value: not a constant expression");
    return node_->value;
}

FunctionExpr operator+(const FunctionExpr& a, const FunctionExpr& b) {
    if (a.is_constant() && b.is_constant()) return a.constant_value() + b.constant_value();
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return FunctionExpr(std::shared_ptr<const Node>(make(Kind::Add, {a, b})));
}

FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b) {
    if (a.is_constant() && b.is_constant()) return a.constant_value() * b.constant_value();
    if (is_const(a, 0.0) || is_const(b, 0.0)) return Complex(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return FunctionExpr(std::shared_ptr<const Node>(make(Kind::Mul, {a, b})));
}

FunctionExpr operator-(const FunctionExpr& a) { return Complex(-1.0) * a; }
FunctionExpr operator-(const FunctionExpr& a, const FunctionExpr& b) { return a + (-b); }

FunctionExpr pow(const FunctionExpr& a, int n) {
    if (n < 0) throw ParameterError("pow: exponent must be >= 0");
    if (n == 0) return Complex(1.0);
    if (n == 1) return a;
    if (a.is_constant()) {
        Complex r = 1.0;
        for (int k = 0; k < n; ++k) r *= a.constant_value();
        return r;
    }
    auto node = make(Kind::Pow, {a});
    node->n = n;
    return FunctionExpr(std::shared_ptr<const Node>(node));
}

FunctionExpr FunctionExpr::ppow(const FunctionExpr& base, Complex alpha) {
    if (alpha == 0.0) return Complex(1.0);
    if (alpha == 1.0) return base;
    auto node = make(Kind::PPow, {base});
    node->value = alpha;
    return FunctionExpr(std::shared_ptr<const Node>(node));
}

FunctionExpr FunctionExpr::cos(const FunctionExpr& a) {
    if (a.is_constant()) return std::cos(a.constant_value());
    return FunctionExpr(std::shared_ptr<const Node>(make(Kind::Cos, {a})));
}

FunctionExpr FunctionExpr::sin(const FunctionExpr& a) {
    if (a.is_constant()) return std::sin(a.constant_value());
    return FunctionExpr(std::shared_ptr<const Node>(make(Kind::Sin, {a})));
}

FunctionExpr FunctionExpr::re(const FunctionExpr& a) {
    if (a.is_constant()) return Complex(a.constant_value().real());
    return FunctionExpr(std::shared_ptr<const Node>(make(Kind::Re, {a})));
}

FunctionExpr FunctionExpr::im(const FunctionExpr& a) {
    if (a.is_constant()) return Complex(a.constant_value().imag());
    return FunctionExpr(std::shared_ptr<const Node>(make(Kind::Im, {a})));
}

FunctionExpr FunctionExpr::cantor(const FunctionExpr& a) {
    return FunctionExpr(std::shared_ptr<const Node>(make(Kind::Cantor, {a})));
}

FunctionExpr FunctionExpr::piecewise(PolyPath path, std::vector<PathPiece> pieces, std::optional<double> tol) {
    if (pieces.empty()) throw ParameterError("piecewise: no pieces");
    for (const auto& p : pieces)
        if (!(p.t0 <= p.t1)) throw ParameterError("piecewise: piece interval must satisfy t0 <= t1");
    std::sort(pieces.begin(), pieces.end(), [](const PathPiece& a, const PathPiece& b) { return a.t0 < b.t0; });
    auto node = make(Kind::Piecewise);
    std::vector<Edge> edges;
    const auto& v = path.vertices();
    for (std::size_t k = 0; k + 1 < v.size(); ++k) edges.push_back({v[k], v[k + 1]});
    double lo_x = v[0].real(), hi_x = lo_x, lo_y = v[0].imag(), hi_y = lo_y;
    for (auto p : v) {
        lo_x = std::min(lo_x, p.real());
        hi_x = std::max(hi_x, p.real());
        lo_y = std::min(lo_y, p.imag());
        hi_y = std::max(hi_y, p.imag());
    }
    node->tol = tol ? *tol : 1e-9 * std::hypot(hi_x - lo_x, hi_y - lo_y);
    node->index = std::make_shared<const EdgeIndex>(std::move(edges));
    node->path = std::make_shared<const PolyPath>(std::move(path));
    node->pieces = std::move(pieces);
    return FunctionExpr(std::shared_ptr<const Node>(node));
}

FunctionExpr FunctionExpr::polynomial(const std::vector<Complex>& coeffs) {
    // Horner form keeps evaluation cheap and well conditioned.
    FunctionExpr acc = Complex(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z() + FunctionExpr(*it);
    return acc;
}

namespace {

Complex eval(const Node& n, Point p);

Complex eval_piecewise(const Node& n, Point p) {
    const auto& path = *n.path;
    double best = std::numeric_limits<double>::infinity(), s = 0.0;
    for (auto id : n.index->candidates_box(p, n.tol)) {
        double t = 0;
        const Edge& e = n.index->edges()[id];
        const double d = segment_distance(p, e.a, e.b, &t);
        if (d < best) {
            best = d;
            s = path.cumlen()[id] + t * path.segment_length(id);
        }
    }
    if (!(best <= n.tol)) throw DomainError("piecewise function evaluated off its path", p);
    // Pieces are sorted by t0; the covering piece is the last one starting at or before s.
    auto it = std::upper_bound(n.pieces.begin(), n.pieces.end(), s,
                               [](double v, const PathPiece& piece) { return v < piece.t0; });
    for (int back = 0; back < 2 && it != n.pieces.begin(); ++back) {
        --it;
        if (it->t0 <= s && s <= it->t1) return it->f(p);
    }
    throw DomainError("piecewise function: no piece covers the point", p);
}

Complex eval(const Node& n, Point p) {
    switch (n.kind) {
        case Kind::Const: return n.value;
        case Kind::Z: return p;
        case Kind::Add: return n.args[0](p) + n.args[1](p);
        case Kind::Mul: return n.args[0](p) * n.args[1](p);
        case Kind::Pow: {
            const Complex a = n.args[0](p);
            Complex r = 1.0;
            for (int k = 0; k < n.n; ++k) r *= a;
            return r;
        }
        case Kind::PPow: {
            const Complex a = n.args[0](p);
            if (a.imag() == 0.0 && a.real() <= 0.0)
                throw DomainError("principal power evaluated on the closed negative real axis", p);
            return std::exp(n.value * std::log(a));
        }
        case Kind::Cos: return std::cos(n.args[0](p));
        case Kind::Sin: return std::sin(n.args[0](p));
        case Kind::Re: return n.args[0](p).real();
        case Kind::Im: return n.args[0](p).imag();
        case Kind::Cantor: {
            const double x = n.args[0](p).real();
            if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Cantor composition: real part outside [0,1]", p);
            return cantor_function(x);
        }
        case Kind::Piecewise: return eval_piecewise(n, p);
    }
    throw ParameterError("unknown expression node");
}

}  // namespace

Complex FunctionExpr::operator()(Point p) const { return eval(*node_, p); }

std::optional<Point> FunctionExpr::branch_cut_crossing(Point a, Point b, int samples) const {
    const Node& n = *node_;
    if (n.kind == Kind::Piecewise) return std::nullopt;
    for (const auto& arg : n.args)
        if (auto hit = arg.branch_cut_crossing(a, b, samples)) return hit;
    if (n.kind != Kind::PPow) return std::nullopt;
    const FunctionExpr& base = n.args[0];
    Complex prev{};
    Point prev_p{};
    for (int k = 0; k <= samples; ++k) {
        const Point p = a + (static_cast<double>(k) / samples) * (b - a);
        const Complex g = base(p);
        if (g.imag() == 0.0 && g.real() <= 0.0) return p;
        if (k > 0 && (g.imag() > 0.0) != (prev.imag() > 0.0)) {
            const double t = prev.imag() / (prev.imag() - g.imag());
            if (prev.real() + t * (g.real() - prev.real()) < 0.0) return prev_p + t * (p - prev_p);
        }
        prev = g;
        prev_p = p;
    }
    return std::nullopt;
}

FunctionExpr FunctionExpr::derivative() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Const: return Complex(0.0);
        case Kind::Z: return Complex(1.0);
        case Kind::Add: return n.args[0].derivative() + n.args[1].derivative();
        case Kind::Mul:
            return n.args[0].derivative() * n.args[1] + n.args[0] * n.args[1].derivative();
        case Kind::Pow:
            return Complex(static_cast<double>(n.n)) * pow(n.args[0], n.n - 1) * n.args[0].derivative();
        case Kind::PPow: return n.value * ppow(n.args[0], n.value - 1.0) * n.args[0].derivative();
        case Kind::Cos: return -(sin(n.args[0]) * n.args[0].derivative());
        case Kind::Sin: return cos(n.args[0]) * n.args[0].derivative();
        case Kind::Re:
        case Kind::Im:
            if (n.args[0].derivative().is_constant() && n.args[0].derivative().constant_value() == 0.0)
                return Complex(0.0);
            throw DomainError("Re/Im of a non-constant expression is not complex differentiable");
        case Kind::Cantor:
            // The derivative vanishes off the Cantor set, which is the only
            // place where the composition is differentiable.
            return Complex(0.0);
        case Kind::Piecewise: {
            std::vector<PathPiece> d;
            for (const auto& p : n.pieces) d.push_back({p.t0, p.t1, p.df ? *p.df : p.f.derivative(), std::nullopt});
            return piecewise(*n.path, std::move(d), n.tol);
        }
    }
    throw ParameterError("unknown expression node");
}

namespace {

std::string fmt(Complex c) {
    std::ostringstream os;
    os.precision(17);
    if (c.imag() == 0.0)
        os << c.real();
    else
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    return os.str();
}

}  // namespace

std::string FunctionExpr::to_string() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Const: return fmt(n.value);
        case Kind::Z: return "z";
        case Kind::Add: return "(" + n.args[0].to_string() + " + " + n.args[1].to_string() + ")";
        case Kind::Mul: return n.args[0].to_string() + "*" + n.args[1].to_string();
        case Kind::Pow: return n.args[0].to_string() + "^" + std::to_string(n.n);
        case Kind::PPow: return n.args[0].to_string() + "^" + fmt(n.value);
        case Kind::Cos: return "cos(" + n.args[0].to_string() + ")";
        case Kind::Sin: return "sin(" + n.args[0].to_string() + ")";
        case Kind::Re: return "Re(" + n.args[0].to_string() + ")";
        case Kind::Im: return "Im(" + n.args[0].to_string() + ")";
        case Kind::Cantor: return "cantor(Re " + n.args[0].to_string() + ")";
        case Kind::Piecewise: return "piecewise[" + std::to_string(n.pieces.size()) + " pieces]";
    }
    return "?";
}

namespace {

using nlohmann::json;

json cjson(Complex c) { return json::array({c.real(), c.imag()}); }

Complex cfrom(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_array() || j.size() != 2) throw ParameterError("complex value must be a number or [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

const char* tag(Kind k) {
    switch (k) {
        case Kind::Const: return "const";
        case Kind::Z: return "z";
        case Kind::Add: return "add";
        case Kind::Mul: return "mul";
        case Kind::Pow: return "pow";
        case Kind::PPow: return "ppow";
        case Kind::Cos: return "cos";
        case Kind::Sin: return "sin";
        case Kind::Re: return "re";
        case Kind::Im: return "im";
        case Kind::Piecewise: return "piecewise";
        case Kind::Cantor: return "cantor";
    }
    return "?";
}

}  // namespace

void to_json(json& j, const FunctionExpr& e) {
    const auto& n = e.node();
    j = json::object();
    j["op"] = tag(n.kind);
    switch (n.kind) {
        case Kind::Const: j["value"] = cjson(n.value); break;
        case Kind::Z: break;
        case Kind::Add:
        case Kind::Mul: j["args"] = json::array({json(n.args[0]), json(n.args[1])}); break;
        case Kind::Pow:
            j["arg"] = n.args[0];
            j["n"] = n.n;
            break;
        case Kind::PPow:
            j["arg"] = n.args[0];
            j["alpha"] = cjson(n.value);
            break;
        case Kind::Cos:
        case Kind::Sin:
        case Kind::Re:
        case Kind::Im:
        case Kind::Cantor: j["arg"] = n.args[0]; break;
        case Kind::Piecewise: {
            json path = json::array();
            for (auto p : n.path->vertices()) path.push_back(cjson(p));
            json pieces = json::array();
            for (const auto& p : n.pieces) {
                json pj = {{"t0", p.t0}, {"t1", p.t1}, {"f", p.f}};
                if (p.df) pj["df"] = *p.df;
                pieces.push_back(std::move(pj));
            }
            j["path"] = std::move(path);
            j["pieces"] = std::move(pieces);
            j["tol"] = n.tol;
            break;
        }
    }
}

FunctionExpr function_expr_from_json(const json& j) {
    if (!j.is_object() || !j.contains("op")) throw ParameterError("expression JSON must be an object with \"op\"");
    const std::string op = j.at("op").get<std::string>();
    auto arg = [&] { return function_expr_from_json(j.at("arg")); };
    auto two = [&](int k) { return function_expr_from_json(j.at("args").at(k)); };
    if (op == "const") return cfrom(j.at("value"));
    if (op == "z") return FunctionExpr::z();
    if (op == "add") return two(0) + two(1);
    if (op == "mul") return two(0) * two(1);
    if (op == "pow") return pow(arg(), j.at("n").get<int>());
    if (op == "ppow") return FunctionExpr::ppow(arg(), cfrom(j.at("alpha")));
    if (op == "cos") return FunctionExpr::cos(arg());
    if (op == "sin") return FunctionExpr::sin(arg());
    if (op == "re") return FunctionExpr::re(arg());
    if (op == "im") return FunctionExpr::im(arg());
    if (op == "cantor") return FunctionExpr::cantor(arg());
    if (op == "piecewise") {
        std::vector<Point> v;
        for (const auto& p : j.at("path")) v.push_back(cfrom(p));
        std::vector<PathPiece> pieces;
        for (const auto& p : j.at("pieces")) {
            std::optional<FunctionExpr> df;
            if (p.contains("df")) df = function_expr_from_json(p.at("df"));
            pieces.push_back({p.at("t0").get<double>(), p.at("t1").get<double>(), function_expr_from_json(p.at("f")), df});
        }
        std::optional<double> tol;
        if (j.contains("tol")) tol = j.at("tol").get<double>();
        return FunctionExpr::piecewise(PolyPath(std::move(v)), std::move(pieces), tol);
    }
    throw ParameterError("unknown expression op: " + op);
}

}  // namespace planefn
