#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planefn/geom.hpp"
#include "planefn/polygon.hpp"
#include "planefn/sequence.hpp"

namespace planefn {

enum class GalleryKind {
    BadArc,
    CantorSquares,
    DentedSquare,
    RsaDisc,
    CrossedSquare,
    Superman,
    DiscDeletion,
    FattenedTriangleArc,
};

/// Kebab-case names used in JSON and on the command line ("bad-arc", ...).
std::string gallery_name(GalleryKind kind);
GalleryKind parse_gallery_kind(const std::string& name);
std::vector<std::string> gallery_names();

struct Disc {
    Point centre;
    double radius;
};

/// Parameters for every gallery kind; each kind reads only the fields it needs.
struct GalleryParams {
    SequenceRule r = SequenceRule::parse("s2n-1");  ///< dent widths (dented square)
    SequenceRule s = SequenceRule::parse("2^-n");   ///< dent heights (dented square)
    SequenceRule y = SequenceRule::parse("2^-n");   ///< crossing heights (crossed square)
    SequenceRule v = SequenceRule::parse("power:1"); ///< crossing heights (triangle arcs)
    double width_factor = 0.2;                      ///< triangle arcs: half-width / gap
    std::vector<Disc> discs;                        ///< disc deletion; empty means default family
    int chords_per_quarter = 64;
};

struct Gallery {
    GalleryKind kind;
    GalleryParams params;
    int depth;
};

struct Region {
    Ring outer;               ///< counter-clockwise
    std::vector<Ring> holes;  ///< clockwise
};

struct Skeleton {
    std::vector<PolyPath> arcs;
};

/// A concave feature certified by a point a outside the set and a half-line
/// from a in direction `direction` that misses the set.
struct DentFeature {
    Point w;          ///< witness point in the set
    Point a;          ///< apex outside the set
    Point direction;  ///< unit direction of the half-line
};

/// Construction data attached by gallery materialization.
struct Features {
    std::optional<Point> focus;       ///< the point where irregularity is witnessed
    std::vector<Point> witnesses;     ///< w_n, ordered by n
    std::vector<DentFeature> dents;   ///< per-n dent data
    std::vector<Point> junctions;     ///< consecutive arc junction points v_n
    std::vector<double> ratios;       ///< per-n construction ratio (e.g. r_n / s_{2n-1})
};

/// A compact plane set: a polygonal region with holes or a skeleton of arcs,
/// plus isolated limit points that keep truncations compact.
class PlaneSet {
public:
    static PlaneSet region(Ring outer, std::vector<Ring> holes = {});
    static PlaneSet skeleton(std::vector<PolyPath> arcs);

    bool is_region() const { return std::holds_alternative<Region>(shape_); }
    bool is_skeleton() const { return std::holds_alternative<Skeleton>(shape_); }
    const Region& as_region() const;
    const Skeleton& as_skeleton() const;

    const std::vector<Point>& isolated_points() const { return isolated_; }
    /// Every polygon/arc vertex plus isolated points and feature points.
    std::vector<Point> construction_points() const;

    const std::optional<Gallery>& gallery() const { return gallery_; }
    const Features& features() const { return features_; }

    /// Boundary edges (Region) or arc segments (Skeleton).
    const EdgeIndex& edge_index() const { return *index_; }

    /// Bounding box as (min corner, max corner).
    std::pair<Point, Point> bounds() const;

    PlaneSet with_isolated(std::vector<Point> points) const;
    PlaneSet with_gallery(Gallery g) const;
    PlaneSet with_features(Features f) const;

private:
    std::variant<Region, Skeleton> shape_;
    std::vector<Point> isolated_;
    std::optional<Gallery> gallery_;
    Features features_;
    std::shared_ptr<const EdgeIndex> index_;
};

/// Finite-depth truncation of a gallery construction.
PlaneSet materialize(GalleryKind kind, const GalleryParams& params, int depth);
PlaneSet materialize(const Gallery& g);

/// Region: on the boundary within tol, or inside by even-odd parity.
/// Skeleton: within tol of some arc.  Isolated points count within tol.
bool contains(const PlaneSet& set, Point p, double tol = 0.0);

/// Polynomially convex hull of a materialized set.
PlaneSet hull(const PlaneSet& set);

/// The middle-thirds Cantor function on [0,1]; DomainError outside.
double cantor_function(double x);

/// Closed complementary intervals of the middle-thirds Cantor set of level <= depth,
/// sorted by left endpoint (2^depth - 1 intervals).
std::vector<std::pair<double, double>> cantor_complementary_intervals(int depth);

/// Koch curve of the given level between a and b (4^level segments).
PolyPath koch_arc(int level, Point a, Point b);

/// Planar graph of a skeleton: arcs split at every crossing, coincident
/// vertices merged.
struct SkeletonGraph {
    std::vector<Point> nodes;
    struct Link {
        std::uint32_t u, v;
        double length;
    };
    std::vector<Link> links;
    std::vector<std::vector<std::uint32_t>> adjacency;  ///< link ids per node

    int component_count() const;
    /// links - nodes + components
    int cyclomatic_number() const;
};

SkeletonGraph planarize(const Skeleton& skeleton);

/// Counter-clockwise outer-face boundary walk of a connected skeleton graph.
Ring outer_face(const SkeletonGraph& graph);

void to_json(nlohmann::json& j, const PlaneSet& set);
/// Accepts gallery, region or skeleton descriptions.
PlaneSet planeset_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const GalleryParams& p);
GalleryParams gallery_params_from_json(GalleryKind kind, const nlohmann::json& j);

}  // namespace planefn
