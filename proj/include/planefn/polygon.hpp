#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "planefn/geom.hpp"

namespace planefn {

/// A closed polygon given by its vertices; the closing edge back[−1]→front is implicit.
/// Rings may be weakly simple: edges are allowed to be retraced in opposite
/// directions, and the zero-width parts they trace belong to the set.
using Ring = std::vector<Point>;

double signed_area(const Ring& ring);
double perimeter(const Ring& ring);
Ring with_orientation(Ring ring, bool counter_clockwise);
Point ring_centroid(const Ring& ring);

/// Drop exact consecutive duplicates (including wrap-around).
Ring dedupe_ring(Ring ring);

/// Even-odd crossing parity of a horizontal ray from p towards +x.
bool ring_parity(const Ring& ring, Point p);
double ring_boundary_distance(const Ring& ring, Point p);

struct Edge {
    Point a;
    Point b;
};

/// Uniform-grid bucket index over a fixed list of edges.  Supports exact
/// candidate retrieval for segments, ray-cast parity and proximity queries.
class EdgeIndex {
public:
    EdgeIndex() = default;
    explicit EdgeIndex(std::vector<Edge> edges);

    const std::vector<Edge>& edges() const { return edges_; }

    /// Edge ids whose bounding box may meet the closed segment [p, q].
    std::vector<std::uint32_t> candidates_segment(Point p, Point q) const;
    /// Edge ids whose bounding box meets the square of half-side r around p.
    std::vector<std::uint32_t> candidates_box(Point p, double r) const;

    /// Parity of the number of edges crossed by the ray from p towards +x.
    bool parity(Point p) const;
    /// True if some edge lies within distance tol of p.
    bool near_boundary(Point p, double tol) const;
    /// Distance from p to the nearest edge (exhaustive expanding search).
    double boundary_distance(Point p) const;

private:
    std::vector<Edge> edges_;
    double x0_ = 0, y0_ = 0, cw_ = 1, ch_ = 1;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<std::uint32_t>> cells_;

    int col(double x) const;
    int row(double y) const;
    template <class F>
    void for_cells_on_segment(Point p, Point q, F&& f) const;
};

/// Kernel (points that see the whole polygon) of a simple polygon, computed by
/// successive half-plane clipping.  Returns an empty ring when the kernel is empty.
Ring polygon_kernel(const Ring& ring);

}  // namespace planefn
