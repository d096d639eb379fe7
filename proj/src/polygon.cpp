#include "planefn/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace planefn {

double signed_area(const Ring& ring) {
    double s = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(ring[i], ring[(i + 1) % n]);
    return 0.5 * s;
}

double perimeter(const Ring& ring) {
    double s = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) s += std::abs(ring[(i + 1) % n] - ring[i]);
    return s;
}

Ring with_orientation(Ring ring, bool counter_clockwise) {
    if ((signed_area(ring) > 0) != counter_clockwise) std::reverse(ring.begin(), ring.end());
    return ring;
}

Point ring_centroid(const Ring& ring) {
    const double a = signed_area(ring);
    if (a == 0.0) {
        Point s{};
        for (auto p : ring) s += p;
        return s / static_cast<double>(ring.size());
    }
    Point c{};
    const std::size_t n = ring.size();
    const Point o = ring[0];
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = ring[i] - o, q = ring[(i + 1) % n] - o;
        c += (p + q) * cross(p, q);
    }
    return o + c / (6.0 * a);
}

Ring dedupe_ring(Ring ring) {
    Ring out;
    out.reserve(ring.size());
    for (auto p : ring)
        if (out.empty() || out.back() != p) out.push_back(p);
    while (out.size() > 1 && out.back() == out.front()) out.pop_back();
    return out;
}

namespace {

bool edge_crosses_ray(Point a, Point b, Point p) {
    if ((a.imag() > p.imag()) == (b.imag() > p.imag())) return false;
    const double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
    return x > p.real();
}

}  // namespace

bool ring_parity(const Ring& ring, Point p) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
        if (edge_crosses_ray(ring[i], ring[(i + 1) % n], p)) inside = !inside;
    return inside;
}

double ring_boundary_distance(const Ring& ring, Point p) {
    double d = std::numeric_limits<double>::infinity();
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) d = std::min(d, segment_distance(p, ring[i], ring[(i + 1) % n]));
    return d;
}

EdgeIndex::EdgeIndex(std::vector<Edge> edges) : edges_(std::move(edges)) {
    if (edges_.empty()) {
        cells_.resize(1);
        return;
    }
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
    double xmax = -xmin, ymax = -xmin;
    for (const auto& e : edges_) {
        xmin = std::min({xmin, e.a.real(), e.b.real()});
        xmax = std::max({xmax, e.a.real(), e.b.real()});
        ymin = std::min({ymin, e.a.imag(), e.b.imag()});
        ymax = std::max({ymax, e.a.imag(), e.b.imag()});
    }
    const double w = xmax - xmin, h = ymax - ymin;
    const double span = std::max({w, h, std::numeric_limits<double>::min()});
    const double target = std::clamp(2.0 * static_cast<double>(edges_.size()), 1.0, 65536.0);
    const double ax = std::max(w, span * 1e-3), ay = std::max(h, span * 1e-3);
    const double cell = std::sqrt(ax * ay / target);
    nx_ = std::clamp(static_cast<int>(std::ceil(ax / cell)), 1, 1024);
    ny_ = std::clamp(static_cast<int>(std::ceil(ay / cell)), 1, 1024);
    x0_ = xmin;
    y0_ = ymin;
    cw_ = ax / nx_;
    ch_ = ay / ny_;
    cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (std::uint32_t id = 0; id < edges_.size(); ++id) {
        for_cells_on_segment(edges_[id].a, edges_[id].b, [&](int c, int r) {
            auto& v = cells_[static_cast<std::size_t>(r) * nx_ + c];
            if (v.empty() || v.back() != id) v.push_back(id);
        });
    }
}

int EdgeIndex::col(double x) const {
    return std::clamp(static_cast<int>(std::floor((x - x0_) / cw_)), 0, nx_ - 1);
}

int EdgeIndex::row(double y) const {
    return std::clamp(static_cast<int>(std::floor((y - y0_) / ch_)), 0, ny_ - 1);
}

template <class F>
void EdgeIndex::for_cells_on_segment(Point p, Point q, F&& f) const {
    const double epsx = cw_ * 1e-9, epsy = ch_ * 1e-9;
    double xa = p.real(), ya = p.imag(), xb = q.real(), yb = q.imag();
    if (xa > xb) {
        std::swap(xa, xb);
        std::swap(ya, yb);
    }
    const int c0 = col(xa - epsx), c1 = col(xb + epsx);
    for (int c = c0; c <= c1; ++c) {
        double lo = x0_ + c * cw_ - epsx, hi = x0_ + (c + 1) * cw_ + epsx;
        if (c == 0) lo = -std::numeric_limits<double>::infinity();
        if (c == nx_ - 1) hi = std::numeric_limits<double>::infinity();
        const double s0 = std::max(lo, xa), s1 = std::min(hi, xb);
        if (s0 > s1) continue;
        double y_s0, y_s1;
        if (xb == xa) {
            y_s0 = ya;
            y_s1 = yb;
        } else {
            y_s0 = ya + (s0 - xa) / (xb - xa) * (yb - ya);
            y_s1 = ya + (s1 - xa) / (xb - xa) * (yb - ya);
        }
        const int r0 = row(std::min(y_s0, y_s1) - epsy), r1 = row(std::max(y_s0, y_s1) + epsy);
        for (int r = r0; r <= r1; ++r) f(c, r);
    }
}

std::vector<std::uint32_t> EdgeIndex::candidates_segment(Point p, Point q) const {
    std::vector<std::uint32_t> out;
    if (edges_.empty()) return out;
    for_cells_on_segment(p, q, [&](int c, int r) {
        const auto& v = cells_[static_cast<std::size_t>(r) * nx_ + c];
        out.insert(out.end(), v.begin(), v.end());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint32_t> EdgeIndex::candidates_box(Point p, double r) const {
    std::vector<std::uint32_t> out;
    if (edges_.empty()) return out;
    const int c0 = col(p.real() - r - cw_ * 1e-9), c1 = col(p.real() + r + cw_ * 1e-9);
    const int r0 = row(p.imag() - r - ch_ * 1e-9), r1 = row(p.imag() + r + ch_ * 1e-9);
    for (int rr = r0; rr <= r1; ++rr)
        for (int c = c0; c <= c1; ++c) {
            const auto& v = cells_[static_cast<std::size_t>(rr) * nx_ + c];
            out.insert(out.end(), v.begin(), v.end());
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool EdgeIndex::parity(Point p) const {
    if (edges_.empty()) return false;
    const int r = row(p.imag());
    const int c0 = col(p.real());
    std::vector<std::uint32_t> ids;
    for (int c = c0; c < nx_; ++c) {
        const auto& v = cells_[static_cast<std::size_t>(r) * nx_ + c];
        ids.insert(ids.end(), v.begin(), v.end());
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    bool inside = false;
    for (auto id : ids)
        if (edge_crosses_ray(edges_[id].a, edges_[id].b, p)) inside = !inside;
    return inside;
}

bool EdgeIndex::near_boundary(Point p, double tol) const {
    for (auto id : candidates_box(p, tol))
        if (segment_distance(p, edges_[id].a, edges_[id].b) <= tol) return true;
    return false;
}

double EdgeIndex::boundary_distance(Point p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& e : edges_) d = std::min(d, segment_distance(p, e.a, e.b));
    return d;
}

Ring polygon_kernel(const Ring& ring_in) {
    const Ring ring = with_orientation(dedupe_ring(ring_in), true);
    const std::size_t n = ring.size();
    if (n < 3) return {};
    // Start from a box that comfortably contains the polygon.
    double xmin = ring[0].real(), xmax = xmin, ymin = ring[0].imag(), ymax = ymin;
    for (auto p : ring) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double pad = 1.0 + (xmax - xmin) + (ymax - ymin);
    Ring poly{{xmin - pad, ymin - pad}, {xmax + pad, ymin - pad}, {xmax + pad, ymax + pad}, {xmin - pad, ymax + pad}};
    for (std::size_t i = 0; i < n && !poly.empty(); ++i) {
        const Point a = ring[i], b = ring[(i + 1) % n];
        const Point d = b - a;
        auto side = [&](Point p) { return cross(d, p - a); };
        Ring out;
        const std::size_t m = poly.size();
        for (std::size_t k = 0; k < m; ++k) {
            const Point p = poly[k], q = poly[(k + 1) % m];
            const double sp = side(p), sq = side(q);
            if (sp >= 0) out.push_back(p);
            if ((sp >= 0) != (sq >= 0)) {
                const double t = sp / (sp - sq);
                out.push_back(p + t * (q - p));
            }
        }
        poly = dedupe_ring(std::move(out));
        if (poly.size() < 3) poly.clear();
    }
    return poly;
}

}  // namespace planefn
