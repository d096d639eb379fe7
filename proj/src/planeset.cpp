#include "planefn/planeset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"

namespace planefn {

using nlohmann::json;

namespace {

struct KindName {
    GalleryKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {GalleryKind::BadArc, "bad-arc"},
    {GalleryKind::CantorSquares, "cantor-squares"},
    {GalleryKind::DentedSquare, "dented-square"},
    {GalleryKind::RsaDisc, "rsa-disc"},
    {GalleryKind::CrossedSquare, "crossed-square"},
    {GalleryKind::Superman, "superman"},
    {GalleryKind::DiscDeletion, "disc-deletion"},
    {GalleryKind::FattenedTriangleArc, "fattened-triangle-arc"},
};

std::vector<Edge> ring_edges(const Ring& ring) {
    std::vector<Edge> out;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back({ring[i], ring[(i + 1) % n]});
    return out;
}

}  // namespace

std::string gallery_name(GalleryKind kind) {
    for (const auto& k : kKindNames)
        if (k.kind == kind) return k.name;
    return "?";
}

GalleryKind parse_gallery_kind(const std::string& name) {
    for (const auto& k : kKindNames)
        if (name == k.name) return k.kind;
    throw ParameterError("unknown gallery kind '" + name + "'");
}

std::vector<std::string> gallery_names() {
    std::vector<std::string> out;
    for (const auto& k : kKindNames) out.emplace_back(k.name);
    return out;
}

// ---------------------------------------------------------------------------
// PlaneSet

PlaneSet PlaneSet::region(Ring outer, std::vector<Ring> holes) {
    outer = dedupe_ring(std::move(outer));
    if (outer.size() < 3 || signed_area(outer) == 0.0)
        throw ParameterError("region outer boundary needs at least 3 vertices and nonzero area");
    outer = with_orientation(std::move(outer), true);
    for (auto& h : holes) {
        h = dedupe_ring(std::move(h));
        if (h.size() < 3 || signed_area(h) == 0.0) throw ParameterError("region hole is degenerate");
        h = with_orientation(std::move(h), false);
        for (auto p : h)
            if (!ring_parity(outer, p) || ring_boundary_distance(outer, p) == 0.0)
                throw ParameterError("region hole is not strictly inside the outer boundary");
    }
    for (std::size_t i = 0; i < holes.size(); ++i)
        for (std::size_t j = 0; j < holes.size(); ++j)
            if (i != j && ring_parity(holes[j], holes[i][0]))
                throw ParameterError("region holes overlap");
    std::vector<Edge> edges = ring_edges(outer);
    for (const auto& h : holes) {
        auto e = ring_edges(h);
        edges.insert(edges.end(), e.begin(), e.end());
    }
    PlaneSet s;
    s.shape_ = Region{std::move(outer), std::move(holes)};
    s.index_ = std::make_shared<const EdgeIndex>(std::move(edges));
    return s;
}

PlaneSet PlaneSet::skeleton(std::vector<PolyPath> arcs) {
    if (arcs.empty()) throw ParameterError("skeleton needs at least one arc");
    std::vector<Edge> edges;
    for (const auto& a : arcs) {
        const auto& v = a.vertices();
        for (std::size_t k = 0; k + 1 < v.size(); ++k) edges.push_back({v[k], v[k + 1]});
    }
    PlaneSet s;
    s.shape_ = Skeleton{std::move(arcs)};
    s.index_ = std::make_shared<const EdgeIndex>(std::move(edges));
    const SkeletonGraph g = planarize(s.as_skeleton());
    if (g.component_count() != 1) throw ParameterError("skeleton arcs are not connected");
    return s;
}

const Region& PlaneSet::as_region() const {
    if (!is_region()) throw ParameterError("set is not a region");
    return std::get<Region>(shape_);
}

const Skeleton& PlaneSet::as_skeleton() const {
    if (!is_skeleton()) throw ParameterError("set is not a skeleton");
    return std::get<Skeleton>(shape_);
}

std::vector<Point> PlaneSet::construction_points() const {
    std::vector<Point> out;
    if (is_region()) {
        const auto& r = as_region();
        out.insert(out.end(), r.outer.begin(), r.outer.end());
        for (const auto& h : r.holes) out.insert(out.end(), h.begin(), h.end());
    } else {
        for (const auto& a : as_skeleton().arcs) out.insert(out.end(), a.vertices().begin(), a.vertices().end());
    }
    out.insert(out.end(), isolated_.begin(), isolated_.end());
    if (features_.focus) out.push_back(*features_.focus);
    out.insert(out.end(), features_.witnesses.begin(), features_.witnesses.end());
    out.insert(out.end(), features_.junctions.begin(), features_.junctions.end());
    return out;
}

std::pair<Point, Point> PlaneSet::bounds() const {
    double xmin = INFINITY, ymin = INFINITY, xmax = -INFINITY, ymax = -INFINITY;
    auto add = [&](Point p) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    };
    for (const auto& e : index_->edges()) {
        add(e.a);
        add(e.b);
    }
    for (auto p : isolated_) add(p);
    return {{xmin, ymin}, {xmax, ymax}};
}

PlaneSet PlaneSet::with_isolated(std::vector<Point> points) const {
    PlaneSet s = *this;
    s.isolated_ = std::move(points);
    return s;
}

PlaneSet PlaneSet::with_gallery(Gallery g) const {
    PlaneSet s = *this;
    s.gallery_ = std::move(g);
    return s;
}

PlaneSet PlaneSet::with_features(Features f) const {
    PlaneSet s = *this;
    s.features_ = std::move(f);
    return s;
}

bool contains(const PlaneSet& set, Point p, double tol) {
    if (tol < 0) throw ParameterError("contains: tol must be >= 0");
    for (auto q : set.isolated_points())
        if (std::abs(p - q) <= tol) return true;
    const auto& idx = set.edge_index();
    if (idx.near_boundary(p, tol)) return true;
    if (set.is_skeleton()) return false;
    return idx.parity(p);
}

// ---------------------------------------------------------------------------
// Skeleton graphs

int SkeletonGraph::component_count() const {
    std::vector<int> comp(nodes.size(), -1);
    int count = 0;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(s)};
        comp[s] = count;
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (auto l : adjacency[u]) {
                const auto v = links[l].u == u ? links[l].v : links[l].u;
                if (comp[v] < 0) {
                    comp[v] = count;
                    stack.push_back(v);
                }
            }
        }
        ++count;
    }
    return count;
}

int SkeletonGraph::cyclomatic_number() const {
    return static_cast<int>(links.size()) - static_cast<int>(nodes.size()) + component_count();
}

SkeletonGraph planarize(const Skeleton& skeleton) {
    std::vector<Edge> segs;
    for (const auto& a : skeleton.arcs) {
        const auto& v = a.vertices();
        for (std::size_t k = 0; k + 1 < v.size(); ++k) segs.push_back({v[k], v[k + 1]});
    }
    const EdgeIndex index(segs);
    // Split points per segment as (parameter, point). Both segments of a
    // crossing hold the identical Point value.
    std::vector<std::vector<std::pair<double, Point>>> splits(segs.size());
    auto param_on = [](const Edge& e, Point p) {
        const Point d = e.b - e.a;
        return std::clamp(dot(p - e.a, d) / std::norm(d), 0.0, 1.0);
    };
    for (std::uint32_t i = 0; i < segs.size(); ++i) {
        splits[i].push_back({0.0, segs[i].a});
        splits[i].push_back({1.0, segs[i].b});
        for (auto j : index.candidates_segment(segs[i].a, segs[i].b)) {
            if (j <= i) continue;
            const Edge& e = segs[i];
            const Edge& f = segs[j];
            if (!segments_intersect(e.a, e.b, f.a, f.b)) continue;
            const Point r = e.b - e.a, s = f.b - f.a;
            const double denom = cross(r, s);
            if (denom != 0.0) {
                const double t = cross(f.a - e.a, s) / denom;
                const double u = cross(f.a - e.a, r) / denom;
                Point p = e.a + t * r;
                // Snap to an existing endpoint when the crossing is at one.
                for (Point q : {e.a, e.b, f.a, f.b})
                    if (std::abs(p - q) <= 1e-12 * (std::abs(r) + std::abs(s))) p = q;
                splits[i].push_back({p == e.a ? 0.0 : p == e.b ? 1.0 : std::clamp(t, 0.0, 1.0), p});
                splits[j].push_back({p == f.a ? 0.0 : p == f.b ? 1.0 : std::clamp(u, 0.0, 1.0), p});
            } else {
                // Collinear overlap: each segment is split at the other's endpoints.
                for (Point q : {f.a, f.b})
                    if (segment_distance(q, e.a, e.b) == 0.0) splits[i].push_back({param_on(e, q), q});
                for (Point q : {e.a, e.b})
                    if (segment_distance(q, f.a, f.b) == 0.0) splits[j].push_back({param_on(f, q), q});
            }
        }
    }
    SkeletonGraph g;
    std::map<std::pair<double, double>, std::uint32_t> ids;
    auto node = [&](Point p) {
        auto key = std::make_pair(p.real(), p.imag());
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        const auto id = static_cast<std::uint32_t>(g.nodes.size());
        ids.emplace(key, id);
        g.nodes.push_back(p);
        return id;
    };
    std::map<std::pair<std::uint32_t, std::uint32_t>, bool> seen;
    for (auto& sp : splits) {
        std::sort(sp.begin(), sp.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t k = 0; k + 1 < sp.size(); ++k) {
            const Point p = sp[k].second, q = sp[k + 1].second;
            if (p == q) continue;
            auto u = node(p), v = node(q);
            auto key = std::minmax(u, v);
            if (seen.emplace(std::make_pair(key.first, key.second), true).second)
                g.links.push_back({u, v, std::abs(q - p)});
        }
    }
    for (const auto& sp : splits)
        for (const auto& [t, p] : sp) node(p);
    g.adjacency.assign(g.nodes.size(), {});
    for (std::uint32_t l = 0; l < g.links.size(); ++l) {
        g.adjacency[g.links[l].u].push_back(l);
        g.adjacency[g.links[l].v].push_back(l);
    }
    return g;
}

Ring outer_face(const SkeletonGraph& g) {
    if (g.nodes.empty()) return {};
    std::uint32_t start = 0;
    for (std::uint32_t i = 1; i < g.nodes.size(); ++i) {
        const Point p = g.nodes[i], q = g.nodes[start];
        if (p.imag() < q.imag() || (p.imag() == q.imag() && p.real() < q.real())) start = i;
    }
    auto other = [&](std::uint32_t l, std::uint32_t u) { return g.links[l].u == u ? g.links[l].v : g.links[l].u; };
    // Choose the outgoing link that is first counter-clockwise from the
    // reverse direction `back` (angle in radians).
    auto next_link = [&](std::uint32_t v, double back, std::int64_t exclude) -> std::int64_t {
        std::int64_t best = -1;
        double best_turn = INFINITY;
        for (auto l : g.adjacency[v]) {
            if (static_cast<std::int64_t>(l) == exclude && g.adjacency[v].size() > 1) continue;
            const Point d = g.nodes[other(l, v)] - g.nodes[v];
            double turn = std::atan2(d.imag(), d.real()) - back;
            while (turn <= 0) turn += 2 * std::numbers::pi;
            while (turn > 2 * std::numbers::pi) turn -= 2 * std::numbers::pi;
            if (turn < best_turn) {
                best_turn = turn;
                best = l;
            }
        }
        return best;
    };
    Ring ring;
    std::uint32_t v = start;
    std::int64_t l = next_link(v, std::numbers::pi, -1);
    if (l < 0) return {g.nodes[start]};
    const std::int64_t first = l;
    const std::size_t limit = 4 * g.links.size() + 4;
    for (std::size_t step = 0; step < limit; ++step) {
        ring.push_back(g.nodes[v]);
        const std::uint32_t w = other(static_cast<std::uint32_t>(l), v);
        const Point back = g.nodes[v] - g.nodes[w];
        const std::int64_t nl = next_link(w, std::atan2(back.imag(), back.real()), l);
        v = w;
        l = nl;
        if (v == start && l == first) break;
    }
    return ring;
}

PlaneSet hull(const PlaneSet& set) {
    if (set.is_region()) {
        const auto& r = set.as_region();
        if (r.holes.empty()) return set;
        return PlaneSet::region(r.outer).with_isolated(set.isolated_points());
    }
    const SkeletonGraph g = planarize(set.as_skeleton());
    if (g.cyclomatic_number() == 0) return set;
    return PlaneSet::region(outer_face(g)).with_isolated(set.isolated_points());
}

// ---------------------------------------------------------------------------
// Cantor function

double cantor_function(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("cantor_function: x outside [0,1]", Point(x, 0.0));
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    // Triadic rationals k/3^m with small m, recognised when the double is
    // exactly the rounded quotient.
    std::uint64_t pow3 = 1;
    for (int m = 1; m <= 30; ++m) {
        pow3 *= 3;
        const double k = std::nearbyint(x * static_cast<double>(pow3));
        if (k / static_cast<double>(pow3) == x) {
            std::uint64_t kk = static_cast<std::uint64_t>(k);
            std::vector<int> digits(m);
            for (int i = m - 1; i >= 0; --i) {
                digits[i] = static_cast<int>(kk % 3);
                kk /= 3;
            }
            double value = 0.0, bit = 0.5;
            for (int d : digits) {
                if (d == 1) return value + bit;
                if (d == 2) value += bit;
                bit *= 0.5;
            }
            return value;
        }
    }
    // Exact ternary expansion of the binary value of x.
    using boost::multiprecision::cpp_int;
    int exp = 0;
    const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, mant in [0.5, 1)
    const auto m53 = static_cast<std::int64_t>(std::ldexp(mant, 53));
    cpp_int num = m53;
    cpp_int den = cpp_int(1) << (53 - exp);
    double value = 0.0, bit = 0.5;
    for (int i = 0; i < 64 && num != 0; ++i) {
        num *= 3;
        const int d = static_cast<int>(num / den);
        num -= cpp_int(d) * den;
        if (d == 1) return value + bit;
        if (d == 2) value += bit;
        bit *= 0.5;
    }
    return value;
}

std::vector<std::pair<double, double>> cantor_complementary_intervals(int depth) {
    if (depth < 1 || depth > 30) throw ParameterError("cantor depth must lie in [1, 30]");
    std::uint64_t scale = 1;
    for (int i = 0; i < depth; ++i) scale *= 3;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ints;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> work{{0, scale}};
    for (int level = 1; level <= depth; ++level) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> next;
        for (auto [lo, len] : work) {
            const std::uint64_t third = len / 3;
            ints.push_back({lo + third, lo + 2 * third});
            next.push_back({lo, third});
            next.push_back({lo + 2 * third, third});
        }
        work = std::move(next);
    }
    std::sort(ints.begin(), ints.end());
    std::vector<std::pair<double, double>> out;
    const double s = static_cast<double>(scale);
    for (auto [a, b] : ints) out.push_back({static_cast<double>(a) / s, static_cast<double>(b) / s});
    return out;
}

PolyPath koch_arc(int level, Point a, Point b) {
    if (level < 0 || level > 10) throw ParameterError("koch level must lie in [0, 10]");
    std::vector<Point> pts{a, b};
    const Point rot = std::polar(1.0, std::numbers::pi / 3);
    for (int l = 0; l < level; ++l) {
        std::vector<Point> next;
        next.reserve(4 * pts.size());
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const Point p = pts[k], q = pts[k + 1];
            const Point p1 = p + (q - p) / 3.0, p3 = p + 2.0 * (q - p) / 3.0;
            next.push_back(p);
            next.push_back(p1);
            next.push_back(p1 + (p3 - p1) * rot);
            next.push_back(p3);
        }
        next.push_back(pts.back());
        pts = std::move(next);
    }
    return PolyPath(std::move(pts));
}

// ---------------------------------------------------------------------------
// Gallery constructions

namespace {

void require_depth(int depth) {
    if (depth < 1) throw ParameterError("depth must be >= 1");
}

PlaneSet make_bad_arc(int N) {
    std::vector<Point> v;
    std::vector<Point> junctions;
    for (int n = 1; n <= N; ++n) {
        const double x = std::ldexp(1.0, -n), e = std::ldexp(1.0, -3 * n);
        v.push_back({x, 0.0});
        v.push_back({x, x});
        v.push_back({x - e, x});
        v.push_back({x - e, 0.0});
        junctions.push_back({x, 0.0});
    }
    v.push_back({std::ldexp(1.0, -(N + 1)), 0.0});
    junctions.push_back(v.back());
    Features f;
    f.focus = Point(0.0, 0.0);
    f.junctions = junctions;
    return PlaneSet::skeleton({PolyPath(std::move(v))}).with_isolated({Point(0.0, 0.0)}).with_features(f);
}

PlaneSet make_cantor_squares(int N) {
    Ring ring{{0.0, 0.0}};
    for (auto [a, b] : cantor_complementary_intervals(N)) {
        const double l = b - a;
        ring.push_back({a, 0.0});
        ring.push_back({a, l});
        ring.push_back({b, l});
        ring.push_back({b, 0.0});
    }
    ring.push_back({1.0, 0.0});
    return PlaneSet::region(std::move(ring));
}

PlaneSet make_dented_square(const GalleryParams& p, int N) {
    if (p.s.depends_on_base()) throw ParameterError("dented square: s must be an independent sequence");
    std::vector<double> s = p.s.values(2 * N + 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0 && s[i] < 1.0)) throw ParameterError("dented square: s_n must lie in (0,1)");
        if (i > 0 && !(s[i] < s[i - 1])) throw ParameterError("dented square: s must be strictly decreasing");
    }
    std::vector<double> r(N);
    for (int n = 1; n <= N; ++n) {
        r[n - 1] = p.r.at(n, &p.s);
        if (!(r[n - 1] > 0.0 && r[n - 1] < 1.0)) throw ParameterError("dented square: r_n must lie in (0,1)");
    }
    auto S = [&](int k) { return s[k - 1]; };
    Ring ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    Features f;
    f.focus = Point(0.0, 0.0);
    for (int n = 1; n <= N; ++n) {
        const double top = S(2 * n - 1), bot = S(2 * n), rn = r[n - 1];
        ring.push_back({0, top});
        ring.push_back({rn, top});
        ring.push_back({rn, bot});
        ring.push_back({0, bot});
        f.witnesses.push_back({0, top});
        f.dents.push_back({Point(0, top), Point(0.999 * rn, 0.5 * (top + bot)), Point(-1, 0)});
        f.ratios.push_back(rn / top);
    }
    return PlaneSet::region(std::move(ring)).with_features(f);
}

PlaneSet make_rsa_disc(const GalleryParams& p, int N) {
    const double pi = std::numbers::pi;
    auto alpha = [&](int n) { return pi / (4.0 * n * n); };
    auto beta = [&](int n) { return 0.5 * (alpha(n) + alpha(n + 1)); };
    auto radius = [&](int n) { return 1.0 / (4.0 * std::sqrt(static_cast<double>(n))); };
    Ring ring = arc_points(0.0, 1.0, alpha(1), 2 * pi, p.chords_per_quarter);
    ring.back() = Point(1.0, 0.0);
    ring.push_back(std::polar(1.0, alpha(N + 1)));
    Features f;
    f.focus = Point(1.0, 0.0);
    for (int n = N; n >= 1; --n) {
        ring.push_back(std::polar(1.0 - 2.0 * radius(n), beta(n)));
        ring.push_back(std::polar(1.0, alpha(n)));
    }
    ring.pop_back();  // w_1 is the first vertex of the circular arc
    for (int n = 1; n <= N; ++n) {
        const Point w = std::polar(1.0, alpha(n));
        f.witnesses.push_back(w);
        f.dents.push_back({w, std::polar(1.0 - radius(n), beta(n)), std::polar(1.0, beta(n))});
        f.ratios.push_back(radius(n) / alpha(n));
    }
    return PlaneSet::region(std::move(ring)).with_features(f);
}

PlaneSet make_crossed_square(const GalleryParams& p, int N) {
    if (p.y.depends_on_base()) throw ParameterError("crossed square: y must be an independent sequence");
    std::vector<double> y = p.y.values(N);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0 && y[i] < 1.0)) throw ParameterError("crossed square: y_n must lie in (0,1)");
        if (i > 0 && !(y[i] < y[i - 1])) throw ParameterError("crossed square: y must be strictly decreasing");
    }
    std::vector<Point> left{{0, 0}}, right{{1, 0}};
    for (int n = N; n >= 1; --n) {
        left.push_back({0, y[n - 1]});
        right.push_back({1, y[n - 1]});
    }
    left.push_back({0, 1});
    right.push_back({1, 1});
    std::vector<PolyPath> arcs{PolyPath(left), PolyPath(right), PolyPath({{0, 0}, {1, 0}}),
                               PolyPath({{0, 1}, {1, 1}})};
    Features f;
    f.focus = Point(0.5, 0.0);
    for (int n = 1; n <= N; ++n) {
        arcs.emplace_back(std::vector<Point>{{0, y[n - 1]}, {1, y[n - 1]}});
        f.witnesses.push_back({0.5, y[n - 1]});
    }
    return PlaneSet::skeleton(std::move(arcs)).with_features(f);
}

Ring fattened_polyline(const std::vector<Point>& v, const std::vector<double>& hw) {
    const std::size_t M = v.size() - 1;
    std::vector<Point> dir(M), nrm(M);
    for (std::size_t i = 0; i < M; ++i) {
        dir[i] = (v[i + 1] - v[i]) / std::abs(v[i + 1] - v[i]);
        nrm[i] = dir[i] * Point(0, 1);
    }
    auto join = [&](std::size_t i, double side, std::vector<Point>& out) {
        const Point P = v[i];
        const Point d0 = dir[i - 1], d1 = dir[i];
        const Point o0 = side * hw[i - 1] * nrm[i - 1], o1 = side * hw[i] * nrm[i];
        const double c = cross(d0, d1);
        if (std::abs(c) < 1e-12) {
            // Width step between collinear pieces; emit in traversal order.
            const Point first = side > 0 ? o0 : o1, second = side > 0 ? o1 : o0;
            out.push_back(P + first);
            if (second != first) out.push_back(P + second);
            return;
        }
        const double t = cross(o1 - o0, d1) / c;
        out.push_back(P + o0 + t * d0);
    };
    std::vector<Point> left{v[0] + hw[0] * nrm[0]};
    for (std::size_t i = 1; i < M; ++i) join(i, 1.0, left);
    left.push_back(v[M] + hw[M - 1] * nrm[M - 1]);
    std::vector<Point> right{v[M] - hw[M - 1] * nrm[M - 1]};
    for (std::size_t i = M - 1; i >= 1; --i) join(i, -1.0, right);
    right.push_back(v[0] - hw[0] * nrm[0]);
    Ring ring = left;
    ring.insert(ring.end(), right.begin(), right.end());
    return ring;
}

PlaneSet make_triangle_arc(const GalleryParams& p, int N, bool fatten_edges) {
    if (p.v.depends_on_base()) throw ParameterError("triangle arc: v must be an independent sequence");
    if (!(p.width_factor > 0.0 && p.width_factor < 1.0 / 3.0))
        throw ParameterError("triangle arc: width_factor must lie in (0, 1/3)");
    std::vector<double> h = p.v.values(N + 1);
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0)) throw ParameterError("triangle arc: heights must be positive");
        if (i > 0 && !(h[i] < h[i - 1])) throw ParameterError("triangle arc: heights must strictly decrease");
    }
    auto H = [&](int n) { return h[n - 1]; };
    auto gap = [&](int n) { return n <= N ? H(n) - H(n + 1) : H(N + 1); };
    auto bar_w = [&](int n) { return p.width_factor * std::min(gap(std::max(n - 1, 1)), gap(n)); };
    std::vector<Point> v;
    std::vector<double> hw;
    double side = 1.0;
    for (int n = 1; n <= N; ++n) {
        v.push_back({side * H(n), H(n)});
        hw.push_back(bar_w(n));  // horizontal crossing
        v.push_back({-side * H(n), H(n)});
        hw.push_back(fatten_edges ? std::min(bar_w(n), bar_w(n + 1)) : 0.0);  // along an edge
        side = -side;
    }
    v.push_back({side * H(N + 1), H(N + 1)});
    hw.push_back(0.0);  // final taper into the vertex 0
    v.push_back({0.0, 0.0});
    Features f;
    f.focus = Point(0.0, 0.0);
    f.junctions.assign(v.begin(), v.end() - 1);
    return PlaneSet::region(fattened_polyline(v, hw)).with_features(f);
}

std::vector<Disc> default_discs(int N) {
    std::vector<Disc> out;
    for (int n = 1; n <= N; ++n)
        out.push_back({Point(1.0 - 1.5 * std::ldexp(1.0, -n), 0.0), 0.25 * std::ldexp(1.0, -n)});
    return out;
}

PlaneSet make_disc_deletion(const GalleryParams& p, int N) {
    std::vector<Disc> discs = p.discs.empty() ? default_discs(N) : p.discs;
    if (static_cast<int>(discs.size()) < N) throw ParameterError("disc deletion: fewer discs than depth");
    discs.resize(N);
    for (std::size_t i = 0; i < discs.size(); ++i) {
        if (!(discs[i].radius > 0.0)) throw ParameterError("disc deletion: radii must be positive");
        if (std::abs(discs[i].centre) + discs[i].radius >= 1.0)
            throw ParameterError("disc deletion: discs must lie inside the open unit disc");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(discs[i].centre - discs[j].centre) <= discs[i].radius + discs[j].radius)
                throw ParameterError("disc deletion: closed discs must be pairwise disjoint");
    }
    const double tau = 2 * std::numbers::pi;
    auto circle = [&](Point c, double r) {
        Ring ring = arc_points(c, r, 0.0, tau, p.chords_per_quarter);
        ring.pop_back();
        return ring;
    };
    std::vector<Ring> holes;
    for (const auto& d : discs) holes.push_back(circle(d.centre, d.radius));
    return PlaneSet::region(circle(0.0, 1.0), std::move(holes));
}

}  // namespace

PlaneSet materialize(GalleryKind kind, const GalleryParams& params, int depth) {
    require_depth(depth);
    if (params.chords_per_quarter < 1) throw ParameterError("chords_per_quarter must be >= 1");
    PlaneSet s = [&] {
        switch (kind) {
            case GalleryKind::BadArc: return make_bad_arc(depth);
            case GalleryKind::CantorSquares: return make_cantor_squares(depth);
            case GalleryKind::DentedSquare: return make_dented_square(params, depth);
            case GalleryKind::RsaDisc: return make_rsa_disc(params, depth);
            case GalleryKind::CrossedSquare: return make_crossed_square(params, depth);
            case GalleryKind::Superman: return make_triangle_arc(params, depth, true);
            case GalleryKind::DiscDeletion: return make_disc_deletion(params, depth);
            case GalleryKind::FattenedTriangleArc: return make_triangle_arc(params, depth, false);
        }
        throw ParameterError("unknown gallery kind");
    }();
    return s.with_gallery(Gallery{kind, params, depth});
}

PlaneSet materialize(const Gallery& g) { return materialize(g.kind, g.params, g.depth); }

// ---------------------------------------------------------------------------
// JSON

namespace {

json point_json(Point p) { return json::array({p.real(), p.imag()}); }

Point point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParameterError("point must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json ring_json(const std::vector<Point>& r) {
    json a = json::array();
    for (auto p : r) a.push_back(point_json(p));
    return a;
}

std::vector<Point> ring_from(const json& j) {
    std::vector<Point> out;
    for (const auto& p : j) out.push_back(point_from(p));
    return out;
}

}  // namespace

void to_json(json& j, const GalleryParams& p) {
    j = json::object();
    j["r"] = p.r;
    j["s"] = p.s;
    j["y"] = p.y;
    j["v"] = p.v;
    j["width_factor"] = p.width_factor;
    j["chords_per_quarter"] = p.chords_per_quarter;
    json d = json::array();
    for (const auto& disc : p.discs) d.push_back(json::array({disc.centre.real(), disc.centre.imag(), disc.radius}));
    j["discs"] = d;
}

GalleryParams gallery_params_from_json(GalleryKind, const json& j) {
    GalleryParams p;
    if (j.is_null()) return p;
    if (!j.is_object()) throw ParameterError("gallery params must be an object");
    if (j.contains("r")) p.r = j.at("r").get<SequenceRule>();
    if (j.contains("s")) p.s = j.at("s").get<SequenceRule>();
    if (j.contains("y")) p.y = j.at("y").get<SequenceRule>();
    if (j.contains("v")) p.v = j.at("v").get<SequenceRule>();
    if (j.contains("width_factor")) p.width_factor = j.at("width_factor").get<double>();
    if (j.contains("chords_per_quarter")) p.chords_per_quarter = j.at("chords_per_quarter").get<int>();
    if (j.contains("discs"))
        for (const auto& d : j.at("discs")) {
            if (!d.is_array() || d.size() != 3) throw ParameterError("disc must be [cx, cy, r]");
            p.discs.push_back({Point(d[0].get<double>(), d[1].get<double>()), d[2].get<double>()});
        }
    return p;
}

void to_json(json& j, const PlaneSet& set) {
    j = json::object();
    if (set.gallery()) {
        j["kind"] = gallery_name(set.gallery()->kind);
        j["params"] = set.gallery()->params;
        j["depth"] = set.gallery()->depth;
    }
    json geo = json::object();
    if (set.is_region()) {
        geo["outer"] = ring_json(set.as_region().outer);
        json holes = json::array();
        for (const auto& h : set.as_region().holes) holes.push_back(ring_json(h));
        geo["holes"] = holes;
    } else {
        json arcs = json::array();
        for (const auto& a : set.as_skeleton().arcs) arcs.push_back(ring_json(a.vertices()));
        geo["arcs"] = arcs;
    }
    if (!set.isolated_points().empty()) geo["isolated"] = ring_json(set.isolated_points());
    if (set.gallery())
        j["geometry"] = geo;
    else
        j.update(geo);
}

PlaneSet planeset_from_json(const json& j) {
    if (!j.is_object()) throw ParameterError("set description must be a JSON object");
    if (j.contains("kind")) {
        const GalleryKind kind = parse_gallery_kind(j.at("kind").get<std::string>());
        const GalleryParams params = gallery_params_from_json(kind, j.value("params", json::object()));
        return materialize(kind, params, j.value("depth", 1));
    }
    std::vector<Point> isolated;
    if (j.contains("isolated")) isolated = ring_from(j.at("isolated"));
    if (j.contains("outer")) {
        std::vector<Ring> holes;
        if (j.contains("holes"))
            for (const auto& h : j.at("holes")) holes.push_back(ring_from(h));
        return PlaneSet::region(ring_from(j.at("outer")), std::move(holes)).with_isolated(isolated);
    }
    if (j.contains("arcs")) {
        std::vector<PolyPath> arcs;
        for (const auto& a : j.at("arcs")) arcs.emplace_back(ring_from(a));
        return PlaneSet::skeleton(std::move(arcs)).with_isolated(isolated);
    }
    throw ParameterError("set description needs \"kind\", \"outer\" or \"arcs\"");
}

}  // namespace planefn
