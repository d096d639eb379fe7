#include "planefn/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "planefn/errors.hpp"

namespace planefn {

namespace {

// Even-odd test against every ring, written independently of EdgeIndex.
bool inside_rings(const Region& reg, double x, double y) {
    bool in = false;
    auto scan = [&](const Ring& r) {
        const std::size_t n = r.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const double xi = r[i].real(), yi = r[i].imag(), xj = r[j].real(), yj = r[j].imag();
            if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
        }
    };
    scan(reg.outer);
    for (const auto& h : reg.holes) scan(h);
    return in;
}

struct Move {
    int dx, dy;
    double len;
    std::vector<std::pair<int, int>> cells;  // pixels crossed, excluding the start
};

std::vector<Move> make_moves() {
    std::vector<Move> moves;
    for (int dx = -5; dx <= 5; ++dx)
        for (int dy = -5; dy <= 5; ++dy) {
            if ((dx == 0 && dy == 0) || std::gcd(std::abs(dx), std::abs(dy)) != 1) continue;
            Move m{dx, dy, std::hypot(dx, dy), {}};
            // Sample the segment densely; include both neighbours at exact ties.
            const int steps = 64;
            for (int s = 1; s <= steps; ++s) {
                const double t = static_cast<double>(s) / steps;
                const double x = 0.5 + t * dx, y = 0.5 + t * dy;
                const int cx0 = static_cast<int>(std::floor(x)), cy0 = static_cast<int>(std::floor(y));
                const int cx1 = (x == std::floor(x)) ? cx0 - 1 : cx0;
                const int cy1 = (y == std::floor(y)) ? cy0 - 1 : cy0;
                for (int cx : {cx0, cx1})
                    for (int cy : {cy0, cy1}) {
                        std::pair<int, int> c{cx, cy};
                        if (c != std::pair<int, int>{0, 0} &&
                            std::find(m.cells.begin(), m.cells.end(), c) == m.cells.end())
                            m.cells.push_back(c);
                    }
            }
            moves.push_back(std::move(m));
        }
    return moves;
}

}  // namespace

double raster_geodesic(const PlaneSet& set, Point z, Point w, double pixel) {
    if (!set.is_region()) throw ParameterError("raster_geodesic: region sets only");
    if (!(pixel > 0.0)) throw ParameterError("raster_geodesic: pixel must be positive");
    const Region& reg = set.as_region();
    auto [lo, hi] = set.bounds();
    const double x0 = lo.real() - 2 * pixel, y0 = lo.imag() - 2 * pixel;
    const int nx = static_cast<int>(std::ceil((hi.real() - x0) / pixel)) + 3;
    const int ny = static_cast<int>(std::ceil((hi.imag() - y0) / pixel)) + 3;
    if (static_cast<double>(nx) * ny > 5e7) throw ParameterError("raster_geodesic: grid too large");
    std::vector<std::uint8_t> freecell(static_cast<std::size_t>(nx) * ny);
    auto id = [&](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
    auto centre = [&](int i, int j) { return Point(x0 + (i + 0.5) * pixel, y0 + (j + 0.5) * pixel); };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Point c = centre(i, j);
            freecell[id(i, j)] = inside_rings(reg, c.real(), c.imag());
        }
    const auto moves = make_moves();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(freecell.size(), inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    auto near_cells = [&](Point p, auto&& f) {
        const int ci = static_cast<int>(std::floor((p.real() - x0) / pixel));
        const int cj = static_cast<int>(std::floor((p.imag() - y0) / pixel));
        for (int j = cj - 3; j <= cj + 3; ++j)
            for (int i = ci - 3; i <= ci + 3; ++i)
                if (i >= 0 && j >= 0 && i < nx && j < ny && freecell[id(i, j)] &&
                    std::abs(centre(i, j) - p) <= 3 * pixel)
                    f(i, j);
    };
    near_cells(z, [&](int i, int j) {
        const double d = std::abs(centre(i, j) - z);
        if (d < dist[id(i, j)]) {
            dist[id(i, j)] = d;
            pq.push({d, id(i, j)});
        }
    });
    std::vector<std::pair<std::size_t, double>> targets;
    near_cells(w, [&](int i, int j) { targets.push_back({id(i, j), std::abs(centre(i, j) - w)}); });
    std::vector<std::uint8_t> is_target(freecell.size());
    for (auto [t, d] : targets) is_target[t] = 1;
    double best = inf;
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (d >= best) break;
        if (is_target[u])
            for (auto [t, e] : targets)
                if (t == u) best = std::min(best, d + e);
        const int ui = static_cast<int>(u % nx), uj = static_cast<int>(u / nx);
        for (const auto& m : moves) {
            const int vi = ui + m.dx, vj = uj + m.dy;
            if (vi < 0 || vj < 0 || vi >= nx || vj >= ny) continue;
            const std::size_t v = id(vi, vj);
            const double nd = d + m.len * pixel;
            if (!(nd < dist[v])) continue;
            bool ok = true;
            for (auto [cx, cy] : m.cells) {
                const int i = ui + cx, j = uj + cy;
                if (i < 0 || j < 0 || i >= nx || j >= ny || !freecell[id(i, j)]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            dist[v] = nd;
            pq.push({nd, v});
        }
    }
    if (!std::isfinite(best)) throw UnreachableError("raster_geodesic: no grid path");
    return best;
}

}  // namespace planefn
