#include "planefn/qx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"

namespace planefn {

namespace {

const Complex kOnePlusI{1.0, 1.0};
const Complex kOneMinusI{1.0, -1.0};

bool normal_config(Point z, Point w) { return z.real() < 0 && z.imag() > 0 && w.real() < 0 && w.imag() < 0; }
bool mirrored_config(Point z, Point w) { return z.real() < 0 && z.imag() < 0 && w.real() < 0 && w.imag() > 0; }

std::string fmt_point(Point p) {
    std::ostringstream os;
    os.precision(6);
    os << "(" << p.real() << ", " << p.imag() << ")";
    return os.str();
}

double set_scale(const PlaneSet& set) {
    const auto [lo, hi] = set.bounds();
    const double s = std::abs(hi - lo);
    return s > 0 ? s : 1.0;
}

// True when the closed half-line from a in direction d meets the set.
bool halfline_meets(const PlaneSet& set, Point a, Point d) {
    const auto [lo, hi] = set.bounds();
    const double reach = 4.0 * (std::abs(a) + std::abs(lo) + std::abs(hi) + 1.0);
    const Point far = a + reach * d;
    const auto& idx = set.edge_index();
    for (auto id : idx.candidates_segment(a, far)) {
        const Edge& e = idx.edges()[id];
        if (segments_intersect(a, far, e.a, e.b)) return true;
    }
    for (Point q : set.isolated_points())
        if (segment_distance(q, a, far) == 0.0) return true;
    return false;
}

}  // namespace

double zpow_bound(Point z, Point w) {
    if (!normal_config(z, w) && !mirrored_config(z, w))
        throw PreconditionError("zpow_bound: need z and w in the open second and third quadrants, got z = " +
                                fmt_point(z) + ", w = " + fmt_point(w));
    return std::max(0.0, TestConstants::C_Q * std::abs(z) / std::abs(z - w) - TestConstants::C_Q_prime);
}

double zpow_direct_quotient(Point z, Point w) {
    if (!normal_config(z, w) && !mirrored_config(z, w))
        throw PreconditionError("zpow_direct_quotient: quadrant configuration not satisfied");
    const Complex alpha = normal_config(z, w) ? kOnePlusI : kOneMinusI;
    const Complex Fz = std::exp(alpha * std::log(z)), Fw = std::exp(alpha * std::log(w));
    return std::abs(Fz - Fw) / (TestConstants::F_prime_bound * std::abs(z - w));
}

HalflineBound halfline_bound(const PlaneSet& set, Point z, Point w, const HalfLine& L) {
    const double dl = std::abs(L.direction);
    if (!(dl > 0.0)) throw PreconditionError("halfline_bound: zero direction");
    const Point d = L.direction / dl, a = L.origin;
    if (contains(set, a)) throw PreconditionError("halfline_bound: apex " + fmt_point(a) + " lies in the set");
    if (halfline_meets(set, a, d)) throw PreconditionError("halfline_bound: half-line from " + fmt_point(a) + " meets the set");
    // Rigid motion p -> -(p - a) conj(d) sends a to 0 and L onto the negative real axis.
    const Complex rot = -std::conj(d);
    const Point tz = rot * (z - a), tw = rot * (w - a);
    if (!(tz.real() < 0.0 && tw.real() < 0.0))
        throw PreconditionError("halfline_bound: z or w is not in the open half-plane bisected by the half-line");
    if (!(tz.imag() * tw.imag() < 0.0))
        throw PreconditionError("halfline_bound: segment [z, w] does not cross the half-line");
    const bool normal = tz.imag() > 0.0;
    const FunctionExpr T = FunctionExpr(rot) * FunctionExpr::z() + FunctionExpr(-rot * a);
    HalflineBound out{zpow_bound(tz, tw), std::abs(z - a) / std::abs(z - w), 0.0,
                      FunctionExpr::ppow(T, normal ? kOnePlusI : kOneMinusI)};
    out.direct = std::abs(out.test(z) - out.test(w)) / (TestConstants::F_prime_bound * std::abs(z - w));
    return out;
}

DentSpec gallery_dents(const PlaneSet& set) {
    const auto& f = set.features();
    DentSpec spec{f.focus.value_or(Point(0.0)), {}};
    for (const auto& d : f.dents) spec.items.push_back({d.w, {d.a, d.direction}});
    return spec;
}

QxEstimate long_dents_verdict(const PlaneSet& set, const DentSpec& dents, const GrowthConfig& config) {
    QxEstimate est;
    est.center = dents.z0;
    std::vector<double> ratios, bounds, index;
    for (std::size_t n = 0; n < dents.items.size(); ++n) {
        const auto& item = dents.items[n];
        const HalflineBound hb = halfline_bound(set, dents.z0, item.w, item.L);
        est.witnesses.push_back({"halfline", item.w, hb.bound, hb.ratio, hb.test, TestConstants::F_prime_bound});
        est.best = std::max(est.best, hb.bound);
        ratios.push_back(hb.ratio);
        bounds.push_back(hb.bound);
        index.push_back(static_cast<double>(n + 1));
    }
    est.growth = assess_growth(bounds, index, config);
    const GrowthVerdict ratio_growth = assess_growth(running_max(ratios), index, config);
    est.verdict = ratio_growth.diverging && est.best > 0.0 ? "incomplete-certified" : "inconclusive";
    return est;
}

// ---------------------------------------------------------------------------
// Arc test functions

namespace {

struct ArcPieces {
    std::vector<PathPiece> pieces;
    double gap;
    Point z1, w1;
};

// First parameter t in (0, 1] with |p + t (q - p) - c| = r, given |p - c| < r <= |q - c|.
double exit_param(Point p, Point q, Point c, double r) {
    const Point d = q - p, e = p - c;
    const double A = std::norm(d), B = 2.0 * dot(e, d), C = std::norm(e) - r * r;
    const double disc = std::sqrt(std::max(0.0, B * B - 4 * A * C));
    // Stable root selection; C < 0 so the roots have opposite signs.
    const double q1 = -0.5 * (B + (B >= 0 ? disc : -disc));
    const double t1 = q1 / A, t2 = C / q1;
    return std::clamp(std::max(t1, t2), 0.0, 1.0);
}

// Test function on the sub-polyline v[i..j] of `path` with global arc-length offsets.
ArcPieces build_arc_pieces(const PolyPath& path, std::size_t i, std::size_t j, Complex B) {
    const auto& v = path.vertices();
    const auto& cum = path.cumlen();
    const Point z0 = v[i], w0 = v[j];
    if (z0 == w0) throw PreconditionError("arc_test_function: endpoints coincide");
    const double eta = std::abs(w0 - z0) / 100.0;
    double s_z1 = -1, s_w1 = -1;
    Point z1{}, w1{};
    for (std::size_t k = i; k < j; ++k)
        if (std::abs(v[k + 1] - z0) >= eta) {
            const double t = exit_param(v[k], v[k + 1], z0, eta);
            z1 = v[k] + t * (v[k + 1] - v[k]);
            s_z1 = cum[k] + t * path.segment_length(k);
            break;
        }
    for (std::size_t k = j; k > i; --k)
        if (std::abs(v[k - 1] - w0) >= eta) {
            const double t = exit_param(v[k], v[k - 1], w0, eta);
            w1 = v[k] + t * (v[k - 1] - v[k]);
            s_w1 = cum[k] - t * path.segment_length(k - 1);
            break;
        }
    if (s_z1 < 0 || s_w1 < 0 || !(s_z1 <= s_w1))
        throw PreconditionError("arc_test_function: path too short to place the split points");
    const FunctionExpr Z = FunctionExpr::z();
    const FunctionExpr g1 = Z - z0 - pow(Z - z1, 2) * FunctionExpr(1.0 / (2.0 * (z0 - z1)));
    const FunctionExpr g2 = Z - z0;
    const FunctionExpr g3 = Z - z0 - pow(Z - w1, 2) * FunctionExpr(1.0 / (2.0 * (w0 - w1)));
    const Complex g_at_z0 = -(z0 - z1) / 2.0;
    const Complex g_at_w0 = w0 - z0 - (w0 - w1) / 2.0;
    const Complex delta = g_at_w0 - g_at_z0;
    const double gap = std::abs(delta);
    const Complex rot = std::conj(delta) / gap;
    auto shape = [&](const FunctionExpr& g) { return FunctionExpr(B) + FunctionExpr(rot) * (g - g_at_z0); };
    ArcPieces out;
    out.pieces = {{cum[i], s_z1, shape(g1), std::nullopt},
                  {s_z1, s_w1, shape(g2), std::nullopt},
                  {s_w1, cum[j], shape(g3), std::nullopt}};
    out.gap = gap;
    out.z1 = z1;
    out.w1 = w1;
    return out;
}

}  // namespace

ArcTestFunction arc_test_function(const PolyPath& path, double B) {
    const std::size_t m = path.vertices().size() - 1;
    ArcPieces ap = build_arc_pieces(path, 0, m, B);
    ArcTestFunction out{FunctionExpr::piecewise(path, ap.pieces), FunctionExpr(), 3.0, ap.gap,
                        path.start(), path.end(), ap.z1, ap.w1};
    out.df = out.f.derivative();
    return out;
}

ChainedArcBound chained_arc_bound(const PolyPath& path, double A) {
    if (!(path.length() > A)) throw PreconditionError("chained_arc_bound: path length must exceed A");
    const auto& v = path.vertices();
    const std::size_t m = v.size() - 1;
    std::vector<std::size_t> chosen;
    double chord = 0.0;
    for (std::size_t stride = m;; stride = std::max<std::size_t>(1, stride / 2)) {
        chosen.clear();
        for (std::size_t k = 0; k < m; k += stride) chosen.push_back(k);
        chosen.push_back(m);
        chord = 0.0;
        for (std::size_t k = 0; k + 1 < chosen.size(); ++k) chord += std::abs(v[chosen[k + 1]] - v[chosen[k]]);
        if (chord > A || stride == 1) break;
    }
    if (!(chord > A)) throw PreconditionError("chained_arc_bound: chord sum does not exceed A");
    std::vector<PathPiece> pieces;
    double B = 0.0;
    ChainedArcBound out;
    for (std::size_t k = 0; k + 1 < chosen.size(); ++k) {
        if (v[chosen[k]] == v[chosen[k + 1]]) continue;
        ArcPieces ap = build_arc_pieces(path, chosen[k], chosen[k + 1], B);
        pieces.insert(pieces.end(), ap.pieces.begin(), ap.pieces.end());
        B += ap.gap;
    }
    for (auto idx : chosen) out.chain.push_back(v[idx]);
    out.f = FunctionExpr::piecewise(path, std::move(pieces));
    out.df = out.f.derivative();
    out.gap = B;
    out.chord_sum = chord;
    return out;
}

ArcVerdict nonrectifiable_arc_verdict(const std::vector<PolyPath>& schedule, double A, double prefix_factor,
                                      const GrowthConfig& config) {
    ArcVerdict out;
    std::vector<double> index;
    const double prefix = prefix_factor * A;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const PolyPath& arc = schedule[k];
        out.lengths.push_back(arc.length());
        if (!(arc.length() > prefix)) continue;
        const PolyPath sub = subpath(arc, 0.0, prefix);
        const double dist = std::abs(sub.end() - sub.start());
        if (!(dist > 0.0)) continue;
        const ChainedArcBound cb = chained_arc_bound(sub, A);
        out.quotients.push_back(cb.gap / (cb.derivative_bound * dist));
        out.used.push_back(static_cast<int>(k));
        index.push_back(static_cast<double>(k + 1));
    }
    out.growth = assess_growth(running_max(out.quotients), index, config);
    out.verdict = out.growth.diverging ? "incomplete-certified" : "inconclusive";
    return out;
}

// ---------------------------------------------------------------------------
// Series conditions

BlodgesVerdict blodges_condition(const std::vector<double>& steps, const std::vector<double>& dists, int N,
                                 const GrowthConfig& config) {
    if (N < 8) throw ParameterError("blodges_condition: N must be >= 8");
    if (static_cast<int>(steps.size()) < N || static_cast<int>(dists.size()) < N)
        throw ParameterError("blodges_condition: need N steps and N distances");
    BlodgesVerdict out;
    std::vector<double> x;
    for (int j = 1; j <= 8; ++j) {
        const int H = static_cast<int>(std::lround(static_cast<double>(N) * j / 8.0));
        double tail = 0.0, best = 0.0;
        for (int n = H; n >= 1; --n) {
            tail += steps[n - 1];
            if (dists[n - 1] > 0.0) best = std::max(best, tail / dists[n - 1]);
        }
        out.horizons.push_back(H);
        out.maxima.push_back(best);
        x.push_back(static_cast<double>(H));
    }
    out.growth = assess_growth(out.maxima, x, config);
    out.holds = out.growth.diverging;
    const double d0 = *std::max_element(dists.begin(), dists.begin() + N);
    out.convergent = dists[N - 1] <= 1e-2 * d0;
    return out;
}

BlodgesVerdict blodges_condition(const std::vector<Point>& v, Point z0, int N, const GrowthConfig& config) {
    if (static_cast<int>(v.size()) < N + 1) throw ParameterError("blodges_condition: need N + 1 points");
    std::vector<double> steps, dists;
    for (int k = 0; k < N; ++k) {
        steps.push_back(std::abs(v[k + 1] - v[k]));
        dists.push_back(std::abs(z0 - v[k]));
    }
    return blodges_condition(steps, dists, N, config);
}

double c1_ratio_estimate(const PlaneSet& set, Point z0, const std::vector<FDerivPair>& family, int samples,
                         unsigned seed) {
    const auto pts = sample_points(set, samples, seed);
    double best = 0.0;
    for (const auto& p : family) {
        if (std::abs(p.f(z0)) > 1e-12) throw PreconditionError("c1_ratio_estimate: f(z0) must vanish");
        const double fd = sup_norm(p.g, pts);
        if (fd > 0.0) best = std::max(best, sup_norm(p.f, pts) / fd);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Completeness report

namespace {

const char* kCertified = "incomplete-certified";
const char* kNoDivergence = "no-divergence-found";

std::vector<Point> probe_witnesses(const PlaneSet& set, Point z, const CompletenessConfig& cfg) {
    const double tol = 1e-9 * set_scale(set);
    const auto& f = set.features();
    std::vector<Point> out;
    if (f.focus && std::abs(*f.focus - z) <= tol && !f.witnesses.empty()) {
        for (Point w : f.witnesses)
            if (w != z && contains(set, w, tol)) out.push_back(w);
        return out;
    }
    for (Point p : set.construction_points())
        if (p != z && std::find(out.begin(), out.end(), p) == out.end() && contains(set, p, tol)) out.push_back(p);
    std::sort(out.begin(), out.end(), [&](Point a, Point b) { return std::abs(a - z) < std::abs(b - z); });
    if (static_cast<int>(out.size()) > cfg.witness_budget) out.resize(cfg.witness_budget);
    std::reverse(out.begin(), out.end());
    return out;
}

// Candidate dents from reflex vertices near z, plus the zpow configuration a = 0.
std::vector<std::pair<std::string, DentItem>> search_dents(const PlaneSet& set, Point z, const CompletenessConfig& cfg) {
    std::vector<std::pair<std::string, DentItem>> out;
    if (!set.is_region()) return out;
    const auto& reg = set.as_region();
    std::vector<Point> verts;
    struct Cand {
        Point v, bis, u1, u2;
        double eps;
    };
    std::vector<Cand> cands;
    auto scan = [&](const Ring& r) {
        const std::size_t n = r.size();
        for (std::size_t i = 0; i < n; ++i) {
            verts.push_back(r[i]);
            const Point a = r[(i + n - 1) % n], v = r[i], b = r[(i + 1) % n];
            if (!(cross(v - a, b - v) < 0)) continue;
            const Point u1 = (a - v) / std::abs(a - v), u2 = (b - v) / std::abs(b - v);
            const Point bis = (u1 + u2) / std::abs(u1 + u2);
            cands.push_back({v, bis, u1, u2, 1e-3 * std::min(std::abs(a - v), std::abs(b - v))});
        }
    };
    scan(reg.outer);
    for (const auto& h : reg.holes) scan(h);
    std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) { return std::abs(a.v - z) < std::abs(b.v - z); });
    if (static_cast<int>(cands.size()) > cfg.dent_search_limit) cands.resize(cfg.dent_search_limit);

    auto try_item = [&](const std::string& test, Point a, Point d) {
        if (contains(set, a) || halfline_meets(set, a, d)) return;
        const Complex rot = -std::conj(d);
        const Point tz = rot * (z - a);
        if (!(tz.real() < 0.0) || tz.imag() == 0.0) return;
        double best = std::numeric_limits<double>::infinity();
        Point bw{};
        for (Point w : verts) {
            const Point tw = rot * (w - a);
            if (tw.real() < 0.0 && tw.imag() * tz.imag() < 0.0 && std::abs(w - z) < best) {
                best = std::abs(w - z);
                bw = w;
            }
        }
        if (std::isfinite(best)) out.push_back({test, DentItem{bw, {a, d}}});
    };
    if (!contains(set, 0.0)) try_item("zpow", 0.0, -1.0);
    for (const auto& c : cands) {
        const Point a = c.v + c.eps * c.bis;
        for (Point d : {c.bis, c.u1, c.u2}) try_item("halfline", a, d);
    }
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        return std::abs(x.second.w - z) > std::abs(y.second.w - z);
    });
    return out;
}

bool is_tree_skeleton(const PlaneSet& set) {
    if (!set.is_skeleton() || !set.isolated_points().empty()) return false;
    const SkeletonGraph g = planarize(set.as_skeleton());
    return g.component_count() == 1 && g.cyclomatic_number() == 0;
}

}  // namespace

CompletenessReport completeness_report(const PlaneSet& set, const std::vector<Point>& probes,
                                       const CompletenessConfig& cfg) {
    CompletenessReport rep;
    const double tol = 1e-9 * set_scale(set);
    if (set.is_region()) {
        rep.star_centre = star_centre(set);
        if (rep.star_centre)
            rep.notes.push_back("star-shaped: completeness is equivalent to pointwise regularity");
    }
    const bool tree = is_tree_skeleton(set);
    if (tree)
        rep.notes.push_back(
            "polynomially convex skeleton with empty interior: completeness is equivalent to pointwise regularity");
    if (set.is_skeleton())
        rep.notes.push_back("arc-chain bounds assume the chained test function extends from the geodesic to the set");
    const auto& feats = set.features();
    std::optional<GalleryKind> kind;
    if (set.gallery()) kind = set.gallery()->kind;

    for (Point z : probes) {
        ProbeReport pr;
        pr.z = z;
        bool certified = false;
        double slope = 0.0;
        if (!contains(set, z, tol)) {
            pr.verdict = kNoDivergence;
            pr.notes.push_back("probe lies outside the set");
            rep.probes.push_back(std::move(pr));
            continue;
        }
        const auto witnesses = probe_witnesses(set, z, cfg);

        // Regularity.
        try {
            pr.regularity = regularity_at(set, z, witnesses, cfg.growth);
            slope = pr.regularity->divergence.slope;
            if (pr.regularity->diverging()) {
                pr.notes.push_back("geodesic quotients diverge: not pointwise regular at the probe");
                if (rep.star_centre || tree) {
                    certified = true;
                    pr.notes.push_back("certified by the regularity equivalence");
                }
            }
        } catch (const UnreachableError&) {
            pr.notes.push_back("some witnesses are not joined to the probe at this depth (depth-convergence diagnostic)");
        } catch (const DomainError& e) {
            pr.notes.push_back(std::string("regularity skipped: ") + e.what());
        }

        // Dents.
        const bool at_focus = feats.focus && std::abs(*feats.focus - z) <= tol;
        if (set.is_region()) {
            DentSpec spec{z, {}};
            std::vector<std::string> tests;
            if (at_focus && !feats.dents.empty()) {
                spec = gallery_dents(set);
                spec.z0 = z;
                tests.assign(spec.items.size(), "halfline");
            } else {
                for (auto& [t, item] : search_dents(set, z, cfg)) {
                    try {
                        (void)halfline_bound(set, z, item.w, item.L);
                        spec.items.push_back(item);
                        tests.push_back(t);
                    } catch (const PreconditionError&) {
                    }
                }
            }
            if (!spec.items.empty()) {
                try {
                    QxEstimate est = long_dents_verdict(set, spec, cfg.growth);
                    for (std::size_t k = 0; k < est.witnesses.size(); ++k) {
                        est.witnesses[k].test = tests[k];
                        pr.bounds.push_back(est.witnesses[k]);
                    }
                    if (est.verdict == kCertified) {
                        certified = true;
                        slope = est.growth.slope;
                        pr.notes.push_back("long dents: half-line bounds diverge");
                    }
                } catch (const PreconditionError& e) {
                    pr.notes.push_back(std::string("dent data rejected: ") + e.what());
                }
            }
        }

        // Arc chains along geodesics in skeletons.
        if (set.is_skeleton()) {
            std::vector<double> q;
            for (Point w : witnesses) {
                try {
                    const GeodesicResult g = geodesic_distance(set, z, w);
                    if (g.vertices.size() < 2) continue;
                    const PolyPath path = g.path();
                    const ChainedArcBound cb = chained_arc_bound(path, cfg.arc_fraction * path.length());
                    const double bound = cb.gap / (cb.derivative_bound * std::abs(z - w));
                    pr.bounds.push_back({"arc-chain", w, bound, path.length() / std::abs(z - w), std::nullopt,
                                         cb.derivative_bound});
                    q.push_back(bound);
                } catch (const std::exception&) {
                }
            }
            const GrowthVerdict gv = assess_growth(running_max(q), cfg.growth);
            if (gv.diverging) {
                certified = true;
                slope = gv.slope;
                pr.notes.push_back("arc-chain quotients diverge");
            }
        }

        // Series condition for the triangle arcs.
        if (kind && at_focus && (*kind == GalleryKind::FattenedTriangleArc || *kind == GalleryKind::Superman) &&
            feats.junctions.size() >= 10) {
            const int N = static_cast<int>(feats.junctions.size()) - 1;
            const BlodgesVerdict bv = blodges_condition(feats.junctions, z, N, cfg.growth);
            if (*kind == GalleryKind::FattenedTriangleArc) {
                if (bv.holds) {
                    certified = true;
                    slope = bv.growth.slope;
                    pr.notes.push_back("the junction series condition holds");
                }
            } else {
                pr.notes.push_back(std::string("junction series condition: ") +
                                   (bv.holds ? "holds" : "fails") + " (diagnostic only)");
            }
        }

        pr.verdict = certified ? kCertified : kNoDivergence;
        pr.slope = slope;
        rep.probes.push_back(std::move(pr));
    }
    rep.verdict = kNoDivergence;
    for (const auto& p : rep.probes)
        if (p.verdict == kCertified) rep.verdict = kCertified;
    return rep;
}

// ---------------------------------------------------------------------------
// JSON

namespace {
nlohmann::json pj(Point p) { return nlohmann::json::array({p.real(), p.imag()}); }
}  // namespace

void to_json(nlohmann::json& j, const QxWitness& w) {
    j = {{"test", w.test}, {"w", pj(w.w)}, {"bound", w.bound}, {"ratio", w.ratio}};
    if (w.function) j["function"] = *w.function;
}

void to_json(nlohmann::json& j, const QxEstimate& e) {
    j = {{"z", pj(e.center)}, {"bounds", e.witnesses}, {"best", e.best}, {"verdict", e.verdict},
         {"slope", e.growth.slope}};
}

void to_json(nlohmann::json& j, const ProbeReport& r) {
    nlohmann::json bounds = nlohmann::json::array();
    for (const auto& b : r.bounds) bounds.push_back({{"test", b.test}, {"w", pj(b.w)}, {"bound", b.bound}});
    j = {{"z", pj(r.z)}, {"bounds", bounds}, {"verdict", r.verdict}, {"slope", r.slope}, {"notes", r.notes}};
    if (r.regularity) j["regularity"] = *r.regularity;
}

void to_json(nlohmann::json& j, const CompletenessReport& r) {
    j = {{"verdict", r.verdict}, {"probes", r.probes}, {"notes", r.notes}};
    if (r.star_centre) j["star_centre"] = pj(*r.star_centre);
}

}  // namespace planefn
