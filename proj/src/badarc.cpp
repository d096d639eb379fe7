#include "planefn/badarc.hpp"

#include <cmath>
#include <numbers>

#include "planefn/errors.hpp"
#include "planefn/planeset.hpp"

namespace planefn {

FunctionExpr bad_arc_function(int N) {
    if (N < 1) throw ParameterError("bad_arc_function: N must be >= 1");
    const PlaneSet arc = materialize(GalleryKind::BadArc, {}, N);
    const PolyPath& path = arc.as_skeleton().arcs.front();
    const auto& cum = path.cumlen();
    using B = BadArcExact<double>;
    const FunctionExpr Z = FunctionExpr::z();
    const FunctionExpr y = FunctionExpr::im(Z);
    std::vector<PathPiece> pieces;
    for (int n = 1; n <= N; ++n) {
        const std::size_t k = 4 * static_cast<std::size_t>(n - 1);
        const double a = 0.5 * (B::c(n) + B::c(n + 1)), b = 0.5 * (B::c(n) - B::c(n + 1));
        const double omega = std::ldexp(std::numbers::pi, n);
        const FunctionExpr arg = Complex(omega) * y;
        // Along the vertical side dz = i dy, so df/dz = -i df/dy.
        pieces.push_back({cum[k], cum[k + 1], Complex(a) + Complex(b) * FunctionExpr::cos(arg),
                          Complex(0.0, b * omega) * FunctionExpr::sin(arg)});
        pieces.push_back({cum[k + 1], cum[k + 4], Complex(B::c(n + 1)), FunctionExpr()});
    }
    return FunctionExpr::piecewise(path, std::move(pieces));
}

}  // namespace planefn
