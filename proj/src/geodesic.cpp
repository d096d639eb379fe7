#include "planefn/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <random>

#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"

namespace planefn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double set_scale(const PlaneSet& set) {
    const auto [lo, hi] = set.bounds();
    const double s = std::abs(hi - lo);
    return s > 0 ? s : 1.0;
}

struct DijkstraResult {
    std::vector<double> dist;
    std::vector<std::int64_t> prev;
};

// Dijkstra on `n` nodes where `neighbours(u, f)` calls f(v, w) for each edge.
template <class Neighbours>
DijkstraResult dijkstra(std::size_t n, const std::vector<std::pair<std::size_t, double>>& sources, Neighbours&& neighbours) {
    DijkstraResult r{std::vector<double>(n, kInf), std::vector<std::int64_t>(n, -1)};
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (auto [s, d] : sources)
        if (d < r.dist[s]) {
            r.dist[s] = d;
            r.prev[s] = -1;
            pq.push({d, s});
        }
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > r.dist[u]) continue;
        neighbours(u, [&](std::size_t v, double w) {
            if (d + w < r.dist[v]) {
                r.dist[v] = d + w;
                r.prev[v] = static_cast<std::int64_t>(u);
                pq.push({r.dist[v], v});
            }
        });
    }
    return r;
}

}  // namespace

struct GeodesicEngine::Impl {
    PlaneSet set;
    double scale = 1.0;
    double point_tol = 0.0;

    // Region data
    std::vector<Point> nodes;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> vis;

    // Skeleton data
    SkeletonGraph graph;
    EdgeIndex link_index;

    explicit Impl(const PlaneSet& s) : set(s) {
        scale = set_scale(set);
        point_tol = 1e-9 * scale;
        if (set.is_region())
            build_region();
        else
            build_skeleton();
    }

    // ---- regions ---------------------------------------------------------

    bool inside_point(Point p, double tol) const {
        const auto& idx = set.edge_index();
        return idx.near_boundary(p, tol) || idx.parity(p);
    }

    bool segment_free(Point p, Point q) const {
        const Point r = q - p;
        const double len = std::abs(r);
        if (len == 0.0) return inside_point(p, point_tol);
        const auto& idx = set.edge_index();
        const auto& edges = idx.edges();
        std::vector<double> ts{0.0, 1.0};
        const double eps = 1e-12;
        for (auto id : idx.candidates_segment(p, q)) {
            const Edge& e = edges[id];
            const Point s = e.b - e.a;
            const double denom = cross(r, s);
            const Point ap = e.a - p;
            if (denom != 0.0) {
                const double t = cross(ap, s) / denom;
                const double u = cross(ap, r) / denom;
                if (t >= -eps && t <= 1 + eps && u >= -eps && u <= 1 + eps) ts.push_back(std::clamp(t, 0.0, 1.0));
            } else if (cross(ap, r) == 0.0) {
                for (Point x : {e.a, e.b}) {
                    const double t = dot(x - p, r) / (len * len);
                    if (t > 0.0 && t < 1.0) ts.push_back(t);
                }
            }
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        const double tol = 1e-9 * len + 1e-14 * std::max(std::abs(p), std::abs(q));
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
            if (ts[k + 1] - ts[k] <= 1e-15) continue;
            const Point mid = p + (0.5 * (ts[k] + ts[k + 1])) * r;
            if (!inside_point(mid, tol)) return false;
        }
        return true;
    }

    void build_region() {
        const auto& reg = set.as_region();
        std::map<std::pair<double, double>, std::uint32_t> seen;
        auto scan = [&](const Ring& ring) {
            const std::size_t n = ring.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Point a = ring[(i + n - 1) % n], v = ring[i], b = ring[(i + 1) % n];
                const double c = cross(v - a, b - v);
                const bool bend = c < 0 || (c == 0 && dot(v - a, b - v) < 0);
                if (!bend) continue;
                auto key = std::make_pair(v.real(), v.imag());
                if (seen.emplace(key, static_cast<std::uint32_t>(nodes.size())).second) nodes.push_back(v);
            }
        };
        scan(reg.outer);
        for (const auto& h : reg.holes) scan(h);
        vis.assign(nodes.size(), {});
        for (std::uint32_t i = 0; i < nodes.size(); ++i)
            for (std::uint32_t j = i + 1; j < nodes.size(); ++j)
                if (segment_free(nodes[i], nodes[j])) {
                    const double d = std::abs(nodes[j] - nodes[i]);
                    vis[i].push_back({j, d});
                    vis[j].push_back({i, d});
                }
    }

    GeodesicResult region_distance(Point z, Point w) const {
        for (Point p : {z, w})
            if (!inside_point(p, point_tol)) throw DomainError("geodesic: point outside the set", p);
        if (z == w) return {{z}, 0.0};
        if (segment_free(z, w)) return {{z, w}, std::abs(w - z)};
        const std::size_t n = nodes.size();
        // Node n is the source z, node n + 1 the target w.
        std::vector<std::pair<std::uint32_t, double>> from_z, to_w;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (segment_free(z, nodes[i])) from_z.push_back({i, std::abs(nodes[i] - z)});
            if (segment_free(nodes[i], w)) to_w.push_back({i, std::abs(w - nodes[i])});
        }
        std::vector<double> to_target(n, kInf);
        for (auto [i, d] : to_w) to_target[i] = d;
        std::vector<std::pair<std::size_t, double>> sources;
        for (auto [i, d] : from_z) sources.push_back({i, d});
        auto r = dijkstra(n + 1, sources, [&](std::size_t u, auto&& relax) {
            if (u == n) return;
            for (auto [v, d] : vis[u]) relax(v, d);
            if (to_target[u] < kInf) relax(n, to_target[u]);
        });
        if (!(r.dist[n] < kInf)) throw UnreachableError("geodesic: points are not joined inside the set");
        std::vector<Point> path{w};
        for (std::int64_t u = r.prev[n]; u >= 0; u = r.prev[static_cast<std::size_t>(u)])
            path.push_back(nodes[static_cast<std::size_t>(u)]);
        path.push_back(z);
        std::reverse(path.begin(), path.end());
        double len = 0.0;
        for (std::size_t k = 0; k + 1 < path.size(); ++k) len += std::abs(path[k + 1] - path[k]);
        return {std::move(path), len};
    }

    // ---- skeletons -------------------------------------------------------

    void build_skeleton() {
        graph = planarize(set.as_skeleton());
        std::vector<Edge> e;
        e.reserve(graph.links.size());
        for (const auto& l : graph.links) e.push_back({graph.nodes[l.u], graph.nodes[l.v]});
        link_index = EdgeIndex(std::move(e));
    }

    struct Location {
        std::int64_t link = -1;  // -1: isolated point
        double t = 0.0;
    };

    Location locate(Point p) const {
        double best = kInf;
        Location loc;
        for (auto id : link_index.candidates_box(p, point_tol)) {
            const Edge& e = link_index.edges()[id];
            double t = 0;
            const double d = segment_distance(p, e.a, e.b, &t);
            if (d < best) {
                best = d;
                loc = {static_cast<std::int64_t>(id), t};
            }
        }
        if (best <= point_tol) return loc;
        for (Point q : set.isolated_points())
            if (std::abs(p - q) <= point_tol) return {-1, 0.0};
        throw DomainError("geodesic: point outside the set", p);
    }

    GeodesicResult skeleton_distance(Point z, Point w) const {
        const Location lz = locate(z), lw = locate(w);
        if (z == w) return {{z}, 0.0};
        if (lz.link < 0 || lw.link < 0) throw UnreachableError("geodesic: an isolated point is not joined to the set");
        const auto& Lz = graph.links[static_cast<std::size_t>(lz.link)];
        const auto& Lw = graph.links[static_cast<std::size_t>(lw.link)];
        const std::size_t n = graph.nodes.size();
        auto r = dijkstra(n, {{Lz.u, lz.t * Lz.length}, {Lz.v, (1 - lz.t) * Lz.length}},
                          [&](std::size_t u, auto&& relax) {
                              for (auto l : graph.adjacency[u]) {
                                  const auto& L = graph.links[l];
                                  relax(L.u == u ? L.v : L.u, L.length);
                              }
                          });
        double best = kInf;
        std::int64_t via = -1;
        if (lz.link == lw.link) best = std::abs(lz.t - lw.t) * Lz.length;
        const double du = r.dist[Lw.u] + lw.t * Lw.length, dv = r.dist[Lw.v] + (1 - lw.t) * Lw.length;
        if (du < best) {
            best = du;
            via = Lw.u;
        }
        if (dv < best) {
            best = dv;
            via = Lw.v;
        }
        if (!(best < kInf)) throw UnreachableError("geodesic: points are not joined inside the set");
        std::vector<Point> path{w};
        for (std::int64_t u = via; u >= 0; u = r.prev[static_cast<std::size_t>(u)]) {
            const Point p = graph.nodes[static_cast<std::size_t>(u)];
            if (p != path.back()) path.push_back(p);
        }
        if (z != path.back()) path.push_back(z);
        std::reverse(path.begin(), path.end());
        return {std::move(path), best};
    }
};

GeodesicEngine::GeodesicEngine(const PlaneSet& set) : impl_(std::make_unique<Impl>(set)) {}
GeodesicEngine::~GeodesicEngine() = default;
GeodesicEngine::GeodesicEngine(GeodesicEngine&&) noexcept = default;
GeodesicEngine& GeodesicEngine::operator=(GeodesicEngine&&) noexcept = default;

GeodesicResult GeodesicEngine::distance(Point z, Point w) const {
    return impl_->set.is_region() ? impl_->region_distance(z, w) : impl_->skeleton_distance(z, w);
}

bool GeodesicEngine::segment_inside(Point p, Point q) const {
    if (!impl_->set.is_region()) throw ParameterError("segment_inside requires a region");
    return impl_->segment_free(p, q);
}

std::size_t GeodesicEngine::node_count() const {
    return impl_->set.is_region() ? impl_->nodes.size() : impl_->graph.nodes.size();
}

std::shared_ptr<const GeodesicEngine> geodesic_engine(const PlaneSet& set) {
    struct Entry {
        const EdgeIndex* index;
        std::vector<Point> isolated;
        std::shared_ptr<const PlaneSet> keep;
        std::shared_ptr<const GeodesicEngine> engine;
    };
    static std::mutex mutex;
    static std::vector<Entry> cache;
    {
        std::lock_guard lock(mutex);
        for (const auto& e : cache)
            if (e.index == &set.edge_index() && e.isolated == set.isolated_points()) return e.engine;
    }
    auto engine = std::make_shared<const GeodesicEngine>(set);
    std::lock_guard lock(mutex);
    // The kept copy shares the edge index, so the address stays valid and unique.
    cache.push_back({&set.edge_index(), set.isolated_points(), std::make_shared<const PlaneSet>(set), engine});
    if (cache.size() > 8) cache.erase(cache.begin());
    return engine;
}

GeodesicResult geodesic_distance(const PlaneSet& set, Point z, Point w) {
    return geodesic_engine(set)->distance(z, w);
}

double geodesic_diameter(const PlaneSet& set, int sample_budget, unsigned seed) {
    if (sample_budget < 2) throw ParameterError("geodesic_diameter: sample_budget must be >= 2");
    auto engine = geodesic_engine(set);
    std::vector<Point> pts;
    for (Point p : set.construction_points())
        if (std::find(pts.begin(), pts.end(), p) == pts.end() && contains(set, p, 1e-9 * set_scale(set)))
            pts.push_back(p);
    if (static_cast<int>(pts.size()) > sample_budget) {
        std::mt19937_64 rng(seed);
        std::shuffle(pts.begin(), pts.end(), rng);
        pts.resize(sample_budget);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            try {
                best = std::max(best, engine->distance(pts[i], pts[j]).length);
            } catch (const UnreachableError&) {
            }
        }
    return best;
}

RegularityReport regularity_at(const PlaneSet& set, Point z, const std::vector<Point>& witnesses,
                               const GrowthConfig& config) {
    auto engine = geodesic_engine(set);
    RegularityReport rep;
    rep.center = z;
    std::vector<double> q;
    for (Point w : witnesses) {
        if (w == z) continue;
        const double d = std::abs(w - z);
        const double delta = engine->distance(z, w).length;
        rep.samples.push_back({w, delta, d, delta / d});
        q.push_back(delta / d);
    }
    rep.kz_estimate = 1.0;
    for (double x : q) rep.kz_estimate = std::max(rep.kz_estimate, x);
    const auto rm = running_max(q);
    rep.divergence = assess_growth(rm, config);
    return rep;
}

DentedSquareVerdict classify_dented_square(const GalleryParams& params, int N, const GrowthConfig& config) {
    if (N < 1) throw ParameterError("classify_dented_square: N must be >= 1");
    // Materialization validates the parameters.
    const PlaneSet set = materialize(GalleryKind::DentedSquare, params, N);
    DentedSquareVerdict v;
    v.ratios = set.features().ratios;
    v.growth = assess_growth(running_max(v.ratios), config);
    v.complete = !v.growth.diverging;
    return v;
}

bool is_star_centre(const PlaneSet& set, Point p) {
    if (!set.is_region()) return false;
    if (!contains(set, p, 1e-9 * set_scale(set))) return false;
    auto engine = geodesic_engine(set);
    auto check_ring = [&](const Ring& r) {
        const std::size_t n = r.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (!engine->segment_inside(p, r[i])) return false;
            if (!engine->segment_inside(p, 0.5 * (r[i] + r[(i + 1) % n]))) return false;
        }
        return true;
    };
    if (!check_ring(set.as_region().outer)) return false;
    for (const auto& h : set.as_region().holes)
        if (!check_ring(h)) return false;
    return true;
}

std::optional<Point> star_centre(const PlaneSet& set) {
    if (!set.is_region() || !set.as_region().holes.empty()) return std::nullopt;
    const Ring k = polygon_kernel(set.as_region().outer);
    if (k.size() < 3) return std::nullopt;
    const Point c = ring_centroid(k);
    if (is_star_centre(set, c)) return c;
    return std::nullopt;
}

void to_json(nlohmann::json& j, const GeodesicResult& r) {
    nlohmann::json path = nlohmann::json::array();
    for (auto p : r.vertices) path.push_back({p.real(), p.imag()});
    j = {{"length", r.length}, {"path", path}};
}

void to_json(nlohmann::json& j, const RegularityReport& r) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"w", {s.w.real(), s.w.imag()}},
                           {"delta", s.delta},
                           {"distance", s.distance},
                           {"quotient", s.quotient}});
    j = {{"z", {r.center.real(), r.center.imag()}},
         {"kz", r.kz_estimate},
         {"verdict", r.divergence.diverging ? "diverging" : "bounded"},
         {"slope", r.divergence.slope},
         {"samples", samples}};
}

}  // namespace planefn
