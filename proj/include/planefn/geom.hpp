#pragma once

#include <complex>
#include <span>
#include <vector>

namespace planefn {

/// Points of the plane are complex numbers; re/im are the Cartesian coordinates.
using Point = std::complex<double>;
using Complex = std::complex<double>;

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

/// Distance from p to the closed segment [a, b]; `t` receives the clamped
/// parameter of the nearest point when non-null.
double segment_distance(Point p, Point a, Point b, double* t = nullptr);

/// Closed-segment intersection test (touching and collinear overlap count).
bool segments_intersect(Point a, Point b, Point c, Point d);

/// An admissible polyline path: at least two vertices, no zero-length segment.
class PolyPath {
public:
    /// Throws ParameterError if the vertex list is not admissible.
    explicit PolyPath(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return vertices_; }
    /// cumlen()[k] is the arc length from the start to vertex k.
    const std::vector<double>& cumlen() const { return cumlen_; }
    std::size_t segment_count() const { return vertices_.size() - 1; }
    double segment_length(std::size_t k) const { return seglen_[k]; }

    double length() const { return cumlen_.back(); }
    Point start() const { return vertices_.front(); }
    Point end() const { return vertices_.back(); }

    /// Point at arc-length parameter s in [0, length()] (clamped).
    Point at(double s) const;
    /// Index k of the segment containing parameter s (the last one at s = length()).
    std::size_t segment_at(double s) const;

    PolyPath reversed() const;

    bool operator==(const PolyPath& other) const { return vertices_ == other.vertices_; }

private:
    std::vector<Point> vertices_;
    std::vector<double> seglen_;
    std::vector<double> cumlen_;
};

/// No two consecutive vertices coincide (exact comparison), at least two
/// vertices, and total length finite and positive.
bool is_admissible(std::span<const Point> vertices);

double arc_length(const PolyPath& path);

/// Piecewise-linear arc-length parametrization of a path on [0, |path|].
class ArcLengthParam {
public:
    explicit ArcLengthParam(PolyPath path) : path_(std::move(path)) {}

    const PolyPath& path() const { return path_; }
    double length() const { return path_.length(); }
    Point operator()(double s) const { return path_.at(s); }

private:
    PolyPath path_;
};

ArcLengthParam reparametrize_by_arclength(const PolyPath& path);

/// Restriction of the path to the arc-length interval [s0, s1].
/// Throws ParameterError unless 0 <= s0 < s1 <= |path|.
PolyPath subpath(const PolyPath& path, double s0, double s1);

/// Concatenate paths end to start; the junctions must coincide exactly.
PolyPath concatenate(std::span<const PolyPath> parts);

/// Polyline approximation of the circular arc centre + r e^{it}, t in [t0, t1],
/// with the chord count derived from `chords_per_quarter`.
std::vector<Point> arc_points(Point centre, double radius, double t0, double t1,
                              int chords_per_quarter = 64);

}  // namespace planefn
