#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "planefn/expr.hpp"
#include "planefn/geodesic.hpp"
#include "planefn/growth.hpp"
#include "planefn/pathint.hpp"
#include "planefn/planeset.hpp"

namespace planefn {

struct TestConstants {
    static inline const double C_Q = 1.0 / (std::numbers::sqrt2 * std::exp(std::numbers::pi));
    static inline const double C_Q_prime = 1.0 / std::numbers::sqrt2;
    /// Upper bound of |F'| for F = z^{1±i} on the cut plane.
    static inline const double F_prime_bound = std::numbers::sqrt2 * std::exp(std::numbers::pi);
};

/// max(0, C_Q |z| / |z − w| − C'_Q) for z in the open second quadrant and w in
/// the open third quadrant, or the mirrored configuration.  PreconditionError otherwise.
double zpow_bound(Point z, Point w);

/// |F(z) − F(w)| / (√2 e^π |z − w|) with F = z^{1+i} (z^{1-i} in the mirrored
/// configuration); the quotient that zpow_bound bounds from below.
double zpow_direct_quotient(Point z, Point w);

struct HalfLine {
    Point origin;
    Point direction;  ///< normalized on use
};

struct HalflineBound {
    double bound;         ///< max(0, C_Q |z − a| / |z − w| − C'_Q)
    double ratio;         ///< |z − a| / |z − w|
    double direct;        ///< |G(z) − G(w)| / (√2 e^π |z − w|) for the transported power G
    FunctionExpr test;    ///< G = (T z)^{1±i}, T the rigid motion taking L to the negative real axis
};

/// Checks the dent hypotheses (a ∉ X, L misses X, z and w in the closed
/// half-plane bisected by L, segment [z, w] meets L) and evaluates the bound.
/// PreconditionError carrying a diagnostic when a hypothesis fails.
HalflineBound halfline_bound(const PlaneSet& set, Point z, Point w, const HalfLine& L);
inline double halfline_bound(const PlaneSet& set, Point z, Point w, Point a, Point direction) {
    return halfline_bound(set, z, w, HalfLine{a, direction}).bound;
}

struct DentItem {
    Point w;
    HalfLine L;
};

struct DentSpec {
    Point z0;
    std::vector<DentItem> items;  ///< ordered by n
};

/// Dent data from a gallery's features (dented square, RSA disc).
DentSpec gallery_dents(const PlaneSet& set);

struct QxWitness {
    std::string test;  ///< "zpow", "halfline", "arc-chain"
    Point w;
    double bound;
    double ratio = 0.0;
    std::optional<FunctionExpr> function;  ///< the test function, when stored
    double derivative_bound = 0.0;         ///< certified upper bound of |f'| used in the quotient
};

struct QxEstimate {
    Point center;
    std::vector<QxWitness> witnesses;
    double best = 0.0;
    GrowthVerdict growth;
    std::string verdict;  ///< "incomplete-certified" or "inconclusive"
};

/// Half-line bounds for every dent item; incomplete-certified iff the
/// sequence |z0 − a_n| / |z0 − w_n| diverges under the growth rule and some
/// bound is positive.
QxEstimate long_dents_verdict(const PlaneSet& set, const DentSpec& dents, const GrowthConfig& config = {});

struct ArcTestFunction {
    FunctionExpr f;
    FunctionExpr df;
    double derivative_bound = 3.0;
    double gap;  ///< f(w0) − f(z0), real and positive
    Point z0, w0, z1, w1;
};

/// The quadratic-cutoff test function on a Jordan polyline from z0 to w0 with
/// f(z0) = B.  PreconditionError when the endpoints coincide or the path is
/// too short to place the split points.
ArcTestFunction arc_test_function(const PolyPath& path, double B = 0.0);

struct ChainedArcBound {
    FunctionExpr f;
    FunctionExpr df;
    double derivative_bound = 3.0;
    double gap;                 ///< f(γ⁺) − f(γ⁻)
    std::vector<Point> chain;   ///< intermediate points, endpoints included
    double chord_sum;
};

/// Chains arc test functions through intermediate vertices with chord sum > A.
/// PreconditionError when |γ| ≤ A.
ChainedArcBound chained_arc_bound(const PolyPath& path, double A);

struct ArcVerdict {
    std::vector<double> quotients;  ///< gap / (3 |z0 − w0|) per usable depth
    std::vector<double> lengths;    ///< truncated arc length per depth
    std::vector<int> used;          ///< indices of the schedule that were long enough
    GrowthVerdict growth;
    std::string verdict;            ///< "incomplete-certified" or "inconclusive"
};

/// For every arc in the schedule (all starting at z0), takes the prefix of
/// arc length `prefix_factor` · A, chains test functions with the given A and
/// records the quotient.  Arcs not longer than the prefix are skipped.
ArcVerdict nonrectifiable_arc_verdict(const std::vector<PolyPath>& schedule, double A = 6.0,
                                      double prefix_factor = 1.05, const GrowthConfig& config = {});

struct BlodgesVerdict {
    bool holds = false;             ///< the tail quotients are unbounded
    std::vector<int> horizons;      ///< truncation depths N'
    std::vector<double> maxima;     ///< max_n Σ_{k=n}^{N'} step_k / dist_n
    GrowthVerdict growth;
    bool convergent = true;         ///< false when v_N is not close to z0
};

/// From points: step_k = |v_{k+1} − v_k|, dist_n = |z0 − v_n|; v needs N + 1 entries.
BlodgesVerdict blodges_condition(const std::vector<Point>& v, Point z0, int N, const GrowthConfig& config = {});
/// From sequences: steps[k-1] = |v_{k+1} − v_k| and dists[n-1] = |z0 − v_n| for k, n = 1..N.
BlodgesVerdict blodges_condition(const std::vector<double>& steps, const std::vector<double>& dists, int N,
                                 const GrowthConfig& config = {});

/// max over the family of sup|f| / sup|f'| on the samples.  PreconditionError
/// if some f does not vanish at z0.
double c1_ratio_estimate(const PlaneSet& set, Point z0, const std::vector<FDerivPair>& family, int samples = 512,
                         unsigned seed = 0);

struct CompletenessConfig {
    GrowthConfig growth;
    int witness_budget = 64;
    int dent_search_limit = 200;
    double arc_fraction = 0.95;
};

struct ProbeReport {
    Point z;
    std::vector<QxWitness> bounds;
    std::optional<RegularityReport> regularity;
    std::string verdict;  ///< "no-divergence-found" or "incomplete-certified"
    double slope = 0.0;
    std::vector<std::string> notes;
};

struct CompletenessReport {
    std::vector<ProbeReport> probes;
    std::string verdict;
    std::optional<Point> star_centre;
    std::vector<std::string> notes;
};

CompletenessReport completeness_report(const PlaneSet& set, const std::vector<Point>& probes,
                                       const CompletenessConfig& config = {});

void to_json(nlohmann::json& j, const QxWitness& w);
void to_json(nlohmann::json& j, const QxEstimate& e);
void to_json(nlohmann::json& j, const ProbeReport& r);
void to_json(nlohmann::json& j, const CompletenessReport& r);

}  // namespace planefn
