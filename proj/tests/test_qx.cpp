#include <doctest.h>

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"
#include "planefn/qx.hpp"

using namespace planefn;

namespace {

const double pi = std::numbers::pi;
const double CQ = 1.0 / (std::sqrt(2.0) * std::exp(pi));
const double CQp = 1.0 / std::sqrt(2.0);
const PlaneSet unit_square = PlaneSet::region({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

// Square with a thin wedge notch cut in from the left edge, tip at (0.5, 0.5).
PlaneSet notched_square(double h) {
    return PlaneSet::region({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0.5 + h}, {0.5, 0.5}, {0, 0.5 - h}});
}

Complex principal_pow(Complex z, Complex alpha) { return std::exp(alpha * std::log(z)); }

}  // namespace

TEST_CASE("constants") {
    CHECK(TestConstants::C_Q == doctest::Approx(CQ).epsilon(1e-15));
    CHECK(TestConstants::C_Q_prime == doctest::Approx(CQp).epsilon(1e-15));
    CHECK(TestConstants::F_prime_bound == doctest::Approx(std::sqrt(2.0) * std::exp(pi)).epsilon(1e-15));
}

TEST_CASE("zpow bound") {
    const Point z(-1, 0.01), w(-1, -0.01);
    CHECK(zpow_bound(z, w) == doctest::Approx(CQ * std::abs(z) / 0.02 - CQp).epsilon(1e-12));
    CHECK(zpow_bound(z, w) <= zpow_direct_quotient(z, w));
    const double direct = std::abs(principal_pow(z, {1, 1}) - principal_pow(w, {1, 1})) /
                          (std::sqrt(2.0) * std::exp(pi) * std::abs(z - w));
    CHECK(zpow_direct_quotient(z, w) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(zpow_bound(Point(-1, 1), Point(-1, -1)) <= zpow_direct_quotient(Point(-1, 1), Point(-1, -1)));
    CHECK(zpow_bound(Point(-1, 1), Point(-1, -1)) == 0.0);
    CHECK(zpow_bound(Point(-1, -0.01), Point(-1, 0.01)) == doctest::Approx(zpow_bound(z, w)).epsilon(1e-12));
    CHECK_THROWS_AS(zpow_bound(Point(1, 1), Point(-1, -1)), PreconditionError);
    CHECK_THROWS_AS(zpow_bound(Point(-1, 1), Point(-2, 1)), PreconditionError);
}

TEST_CASE("half-line bound at a notch") {
    const PlaneSet set = notched_square(1e-3);
    const Point z(0.05, 0.501), w(0.05, 0.499), a(0.4995, 0.5);
    const HalflineBound hb = halfline_bound(set, z, w, HalfLine{a, Point(-1, 0)});
    CHECK(hb.bound == doctest::Approx(CQ * std::abs(z - a) / std::abs(z - w) - CQp).epsilon(1e-12));
    CHECK(hb.bound > 1.0);
    // Oracle: T(p) = p - a maps the half-line to the negative real axis.
    const double oracle = std::abs(principal_pow(z - a, {1, 1}) - principal_pow(w - a, {1, 1})) /
                          (std::sqrt(2.0) * std::exp(pi) * std::abs(z - w));
    CHECK(hb.direct == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(hb.bound <= hb.direct);

    // |z - a| / |z - w| below e^pi: the bound clamps to 0.
    const HalflineBound near = halfline_bound(set, Point(0.49, 0.5004), Point(0.49, 0.4996), HalfLine{a, Point(-1, 0)});
    CHECK(near.ratio < std::exp(pi));
    CHECK(near.bound == 0.0);
    // Half-line through the set.
    CHECK_THROWS_AS(halfline_bound(set, z, w, HalfLine{a, Point(1, 0)}), PreconditionError);
    // Apex inside the set.
    CHECK_THROWS_AS(halfline_bound(set, z, w, HalfLine{Point(0.7, 0.5), Point(-1, 0)}), PreconditionError);
    // Segment [z, w] misses the half-line.
    CHECK_THROWS_AS(halfline_bound(set, Point(0.05, 0.6), Point(0.05, 0.55), HalfLine{a, Point(-1, 0)}),
                    PreconditionError);
}

TEST_CASE("rsa dents") {
    const PlaneSet rsa = materialize(GalleryKind::RsaDisc, {}, 64);
    const DentSpec d = gallery_dents(rsa);
    CHECK(d.z0 == Point(1.0));
    REQUIRE(d.items.size() == 64);
    double prev = 0;
    for (int n : {24, 40, 64}) {
        const auto& it = d.items[n - 1];
        const double b = halfline_bound(rsa, d.z0, it.w, it.L).bound;
        CHECK(b > prev);
        prev = b;
    }
    const QxEstimate e = long_dents_verdict(rsa, d);
    CHECK(e.verdict == "incomplete-certified");
    nlohmann::json j = e;
    CHECK(j.at("verdict") == "incomplete-certified");
}

TEST_CASE("dented square long dents") {
    GalleryParams p;
    p.r = SequenceRule::parse("sqrt");
    p.s = SequenceRule::parse("4^-n");
    const PlaneSet bad = materialize(GalleryKind::DentedSquare, p, 40);
    CHECK(long_dents_verdict(bad, gallery_dents(bad)).verdict == "incomplete-certified");
    const PlaneSet good = materialize(GalleryKind::DentedSquare, {}, 40);
    CHECK(long_dents_verdict(good, gallery_dents(good)).verdict == "inconclusive");
}

TEST_CASE("arc test functions") {
    const ArcTestFunction s = arc_test_function(PolyPath({0.0, 1.0}));
    CHECK(s.f(0.0) == Complex(0.0));
    CHECK((s.f(1.0) - s.f(0.0)).real() >= 0.5);
    CHECK(s.derivative_bound == 3.0);
    const PolyPath corner({0.0, 1.0, Point(1, 1)});
    const ArcTestFunction c = arc_test_function(corner, 5.0);
    CHECK(std::abs(c.f(0.0) - 5.0) < 1e-12);
    CHECK(c.f(Point(1, 1)).real() - 5.0 > std::sqrt(2.0) / 2);
    CHECK(std::abs(c.f(Point(1, 1)).imag()) < 1e-12);
    for (int k = 0; k <= 400; ++k) CHECK(std::abs(c.df(corner.at(2.0 * k / 400))) <= 3 + 1e-9);
    CHECK_THROWS_AS(arc_test_function(PolyPath({0.0, 1.0, Point(0, 1), 0.0})), PreconditionError);
}

TEST_CASE("chained arc bounds") {
    const int k = 4;
    std::vector<Point> stairs{0.0};
    for (int i = 0; i < k; ++i) {
        stairs.push_back(stairs.back() + 1.0);
        stairs.push_back(stairs.back() + Point(0, 1));
    }
    const PolyPath st(stairs);
    const ChainedArcBound cb = chained_arc_bound(st, k);
    CHECK(cb.gap > k / 2.0);
    CHECK(cb.chord_sum > k);
    for (int i = 0; i <= 800; ++i) CHECK(std::abs(cb.df(st.at(st.length() * i / 800))) <= 3 + 1e-9);
    CHECK(chained_arc_bound(PolyPath({0.0, 1.0}), 0.5).gap > 0.25);
    CHECK_THROWS_AS(chained_arc_bound(PolyPath({0.0, 1.0}), 1.0), PreconditionError);
}

TEST_CASE("non-rectifiable arc verdicts") {
    std::vector<PolyPath> koch;
    for (int level = 1; level <= 8; ++level) koch.push_back(koch_arc(level, 0.0, 6.0));
    CHECK(nonrectifiable_arc_verdict(koch).verdict == "incomplete-certified");

    std::vector<PolyPath> bad;
    for (int depth = 1; depth <= 8; ++depth) bad.push_back(materialize(GalleryKind::BadArc, {}, depth).as_skeleton().arcs.front());
    CHECK(nonrectifiable_arc_verdict(bad).verdict == "inconclusive");

    std::vector<PolyPath> straight(6, PolyPath({0.0, 10.0}));
    CHECK(nonrectifiable_arc_verdict(straight).verdict == "inconclusive");
}

TEST_CASE("series condition") {
    const int N = 200;
    std::vector<double> harmonic, geo4, dist2, k2;
    for (int k = 1; k <= N; ++k) {
        harmonic.push_back(1.0 / k);
        geo4.push_back(std::pow(4.0, -k));
        dist2.push_back(std::pow(2.0, -k));
        k2.push_back(k * std::pow(2.0, -k));
    }
    CHECK(blodges_condition(harmonic, dist2, N).holds);
    CHECK_FALSE(blodges_condition(geo4, dist2, N).holds);
    CHECK(blodges_condition(k2, dist2, N).holds);

    std::vector<Point> v;
    for (int n = 1; n <= 41; ++n) v.push_back(Point(std::pow(2.0, -n), 0));
    CHECK(blodges_condition(v, 0.0, 40).convergent);
    std::vector<Point> far;
    for (int n = 1; n <= 41; ++n) far.push_back(Point(1.0 + 1.0 / n, 0));
    CHECK_FALSE(blodges_condition(far, 0.0, 40).convergent);
}

TEST_CASE("C1 ratio estimates") {
    const FunctionExpr Z = FunctionExpr::z();
    CHECK(c1_ratio_estimate(unit_square, 0.0, {FDerivPair::of(Z)}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    Ring circle = arc_points(0.0, 1.0, 0.0, 2 * pi, 64);
    circle.pop_back();
    const PlaneSet disc = PlaneSet::region(circle);
    std::vector<FDerivPair> powers;
    for (int n = 1; n <= 5; ++n) powers.push_back(FDerivPair::of(pow(Z, n)));
    CHECK(c1_ratio_estimate(disc, 0.0, powers) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(c1_ratio_estimate(unit_square, 0.0, {FDerivPair::of(Z + Complex(1.0))}), PreconditionError);
}

TEST_CASE("completeness reports") {
    const PlaneSet rsa = materialize(GalleryKind::RsaDisc, {}, 100);
    CHECK(completeness_report(rsa, {1.0}).verdict == "incomplete-certified");

    const CompletenessReport sq = completeness_report(unit_square, {0.0, Point(0.5, 0.5)});
    CHECK(sq.verdict == "no-divergence-found");
    CHECK(sq.star_centre.has_value());

    const PlaneSet crossed = materialize(GalleryKind::CrossedSquare, {}, 12);
    const Point focus = *crossed.features().focus;
    CHECK(completeness_report(crossed, {focus}).verdict == "incomplete-certified");
    CHECK(completeness_report(hull(crossed), {focus}).verdict == "no-divergence-found");

    nlohmann::json j = completeness_report(rsa, {1.0});
    REQUIRE(j.at("probes").size() == 1);
    const auto& probe = j.at("probes")[0];
    for (const char* key : {"z", "bounds", "verdict", "slope"}) CHECK(probe.contains(key));
    CHECK(probe.at("bounds")[0].contains("test"));
    CHECK(probe.at("bounds")[0].contains("w"));
    CHECK(probe.at("bounds")[0].contains("bound"));
}
