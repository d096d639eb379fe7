#include "planefn/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "planefn/errors.hpp"

namespace planefn {

double segment_distance(Point p, Point a, Point b, double* t_out) {
    const Point d = b - a;
    const double len2 = std::norm(d);
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    if (t_out) *t_out = t;
    if (t == 0.0) return std::abs(p - a);
    if (t == 1.0) return std::abs(p - b);
    return std::abs(p - (a + t * d));
}

namespace {

int orientation(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

bool on_segment_collinear(Point a, Point b, Point p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment_collinear(a, b, c)) return true;
    if (o2 == 0 && on_segment_collinear(a, b, d)) return true;
    if (o3 == 0 && on_segment_collinear(c, d, a)) return true;
    if (o4 == 0 && on_segment_collinear(c, d, b)) return true;
    return false;
}

bool is_admissible(std::span<const Point> vertices) {
    if (vertices.size() < 2) return false;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        const Point a = vertices[k], b = vertices[k + 1];
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
            !std::isfinite(b.imag()))
            return false;
        if (a == b) return false;
        total += std::abs(b - a);
    }
    return std::isfinite(total) && total > 0.0;
}

PolyPath::PolyPath(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (!is_admissible(vertices_))
        throw ParameterError("path is not admissible (needs >= 2 finite vertices, no repeats)");
    seglen_.resize(vertices_.size() - 1);
    cumlen_.resize(vertices_.size());
    cumlen_[0] = 0.0;
    for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
        seglen_[k] = std::abs(vertices_[k + 1] - vertices_[k]);
        cumlen_[k + 1] = cumlen_[k] + seglen_[k];
    }
}

std::size_t PolyPath::segment_at(double s) const {
    if (s <= 0.0) return 0;
    if (s >= length()) return segment_count() - 1;
    auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), s);
    std::size_t k = static_cast<std::size_t>(it - cumlen_.begin()) - 1;
    return std::min(k, segment_count() - 1);
}

Point PolyPath::at(double s) const {
    if (s <= 0.0) return vertices_.front();
    if (s >= length()) return vertices_.back();
    const std::size_t k = segment_at(s);
    const double local = s - cumlen_[k];
    if (local <= 0.0) return vertices_[k];
    if (local >= seglen_[k]) return vertices_[k + 1];
    return vertices_[k] + (local / seglen_[k]) * (vertices_[k + 1] - vertices_[k]);
}

PolyPath PolyPath::reversed() const {
    std::vector<Point> v(vertices_.rbegin(), vertices_.rend());
    return PolyPath(std::move(v));
}

double arc_length(const PolyPath& path) { return path.length(); }

ArcLengthParam reparametrize_by_arclength(const PolyPath& path) { return ArcLengthParam(path); }

PolyPath subpath(const PolyPath& path, double s0, double s1) {
    if (!(s0 >= 0.0 && s1 <= path.length() && s0 < s1))
        throw ParameterError("subpath interval must satisfy 0 <= s0 < s1 <= |path|");
    std::vector<Point> out;
    out.push_back(path.at(s0));
    const auto& cum = path.cumlen();
    const auto& v = path.vertices();
    for (std::size_t k = 1; k + 1 < v.size(); ++k)
        if (cum[k] > s0 && cum[k] < s1 && v[k] != out.back()) out.push_back(v[k]);
    const Point last = path.at(s1);
    if (last != out.back()) out.push_back(last);
    if (out.size() < 2) {
        // s1 - s0 below the resolution of the coordinates.
        throw ParameterError("subpath interval collapses to a point");
    }
    return PolyPath(std::move(out));
}

PolyPath concatenate(std::span<const PolyPath> parts) {
    if (parts.empty()) throw ParameterError("concatenate: no parts");
    std::vector<Point> out = parts.front().vertices();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto& v = parts[i].vertices();
        if (v.front() != out.back()) throw ParameterError("concatenate: parts do not join");
        out.insert(out.end(), v.begin() + 1, v.end());
    }
    return PolyPath(std::move(out));
}

std::vector<Point> arc_points(Point centre, double radius, double t0, double t1,
                              int chords_per_quarter) {
    if (chords_per_quarter < 1) throw ParameterError("chords_per_quarter must be >= 1");
    const double sweep = std::abs(t1 - t0);
    const int chords =
        std::max(1, static_cast<int>(std::ceil(sweep / (std::numbers::pi / 2) * chords_per_quarter - 1e-9)));
    std::vector<Point> out;
    out.reserve(chords + 1);
    for (int k = 0; k <= chords; ++k) {
        const double t = t0 + (t1 - t0) * (static_cast<double>(k) / chords);
        out.push_back(centre + std::polar(radius, t));
    }
    return out;
}

}  // namespace planefn
