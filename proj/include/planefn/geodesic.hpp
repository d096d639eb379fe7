#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planefn/geom.hpp"
#include "planefn/growth.hpp"
#include "planefn/planeset.hpp"

namespace planefn {

/// A shortest path inside a set.  `vertices` holds a single point when z = w.
struct GeodesicResult {
    std::vector<Point> vertices;
    double length = 0.0;

    /// The path as a PolyPath; ParameterError for the degenerate z = w case.
    PolyPath path() const { return PolyPath(vertices); }
};

/// Precomputed shortest-path structure for one set.  Immutable after
/// construction, safe for concurrent queries.
class GeodesicEngine {
public:
    explicit GeodesicEngine(const PlaneSet& set);
    ~GeodesicEngine();
    GeodesicEngine(GeodesicEngine&&) noexcept;
    GeodesicEngine& operator=(GeodesicEngine&&) noexcept;

    /// DomainError if z or w is not in the set, UnreachableError if they lie
    /// in different components.
    GeodesicResult distance(Point z, Point w) const;

    /// Region sets: true iff the closed segment [p, q] lies in the set.
    bool segment_inside(Point p, Point q) const;

    /// Number of graph nodes (reflex vertices for regions, planar nodes for skeletons).
    std::size_t node_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Engine shared through a small per-set cache.
std::shared_ptr<const GeodesicEngine> geodesic_engine(const PlaneSet& set);

GeodesicResult geodesic_distance(const PlaneSet& set, Point z, Point w);

/// Largest sampled geodesic distance: all pairs of construction vertices
/// (subsampled to `sample_budget` points) that lie in one component.
double geodesic_diameter(const PlaneSet& set, int sample_budget = 64, unsigned seed = 0);

struct RegularitySample {
    Point w;
    double delta;     ///< geodesic distance
    double distance;  ///< |z - w|
    double quotient;  ///< delta / distance
};

struct RegularityReport {
    Point center;
    std::vector<RegularitySample> samples;
    double kz_estimate = 1.0;
    GrowthVerdict divergence;  ///< computed on the running maximum of the quotients

    bool diverging() const { return divergence.diverging; }
};

/// Quotients δ(z,w)/|z−w| over the witnesses (in the given order).  Witnesses
/// equal to z are skipped.
RegularityReport regularity_at(const PlaneSet& set, Point z, const std::vector<Point>& witnesses,
                               const GrowthConfig& config = {});

struct DentedSquareVerdict {
    bool complete = true;  ///< ratio bounded: complete / pointwise regular
    std::vector<double> ratios;  ///< r_n / s_{2n-1}
    GrowthVerdict growth;
};

/// Ratio test r_n / s_{2n-1}, n <= N, decided by the shared growth rule.
DentedSquareVerdict classify_dented_square(const GalleryParams& params, int N, const GrowthConfig& config = {});

/// A point of the kernel of a hole-free region, verified by segment tests to
/// every boundary vertex; absent when the kernel is empty or the set has holes
/// or is a skeleton.
std::optional<Point> star_centre(const PlaneSet& set);

/// True iff every segment from p to a boundary vertex lies in the set.
bool is_star_centre(const PlaneSet& set, Point p);

void to_json(nlohmann::json& j, const GeodesicResult& r);
void to_json(nlohmann::json& j, const RegularityReport& r);

}  // namespace planefn
