#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"
#include "planefn/geodesic.hpp"
#include "planefn/pathint.hpp"
#include "planefn/raster.hpp"

using namespace planefn;

namespace {

const PlaneSet unit_square = PlaneSet::region({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

GalleryParams dented(const char* r, const char* s) {
    GalleryParams p;
    p.r = SequenceRule::parse(r);
    p.s = SequenceRule::parse(s);
    return p;
}

}  // namespace

TEST_CASE("convex region gives straight segments") {
    const GeodesicResult r = geodesic_distance(unit_square, 0.0, Point(1, 1));
    CHECK(r.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    REQUIRE(r.vertices.size() == 2);
    CHECK(r.vertices.front() == Point(0.0));
    CHECK(r.vertices.back() == Point(1, 1));
    const GeodesicResult same = geodesic_distance(unit_square, Point(0.3, 0.3), Point(0.3, 0.3));
    CHECK(same.length == 0.0);
    CHECK(same.vertices.size() == 1);
}

TEST_CASE("geodesic errors") {
    CHECK_THROWS_AS(geodesic_distance(unit_square, Point(2, 0), 0.0), DomainError);
    CHECK_THROWS_AS(PlaneSet::skeleton({PolyPath({0.0, 1.0}), PolyPath({Point(0, 1), Point(1, 1)})}), ParameterError);
    const PlaneSet iso = PlaneSet::skeleton({PolyPath({0.0, 1.0})}).with_isolated({Point(3, 0)});
    CHECK_THROWS_AS(geodesic_distance(iso, 0.5, Point(3, 0)), UnreachableError);
}

TEST_CASE("U-shaped region") {
    const PlaneSet u = PlaneSet::region({{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}});
    const GeodesicResult r = geodesic_distance(u, Point(0.5, 2.5), Point(2.5, 2.5));
    const double leg = std::abs(Point(0.5, 2.5) - Point(1, 1));
    CHECK(r.length == doctest::Approx(2 * leg + 1.0).epsilon(1e-12));
    CHECK(r.vertices.size() == 4);
    for (Point v : r.vertices) CHECK(contains(u, v, 1e-9));
    CHECK_FALSE(star_centre(u).has_value());
}

TEST_CASE("disc deletion bound") {
    const PlaneSet set = materialize(GalleryKind::DiscDeletion, {}, 3);
    const auto pts = sample_points(set, 40, 1);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        if (pts[i] == pts[i + 1]) continue;
        CHECK(geodesic_distance(set, pts[i], pts[i + 1]).length <= std::numbers::pi * std::abs(pts[i] - pts[i + 1]));
    }
}

TEST_CASE("dented square against the grid oracle") {
    const PlaneSet set = materialize(GalleryKind::DentedSquare, dented("const:0.5", "2^-n"), 3);
    // Just above the second dent; the path must round the dents below it.
    const Point w(0.01, 0.125 + 0.01);
    const double d = geodesic_distance(set, 0.0, w).length;
    const double o = raster_geodesic(set, 0.0, w, 1.0 / 1024);
    CHECK(std::abs(d - o) / o <= 0.01);
}

TEST_CASE("geodesic diameter") {
    CHECK(geodesic_diameter(unit_square) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(geodesic_diameter(PlaneSet::skeleton({PolyPath({0.0, 1.0})})) == doctest::Approx(1.0).epsilon(1e-15));
    const PlaneSet bad = materialize(GalleryKind::BadArc, {}, 5);
    const PolyPath& arc = bad.as_skeleton().arcs.front();
    CHECK(geodesic_diameter(bad) == doctest::Approx(arc.length()).epsilon(1e-12));
}

TEST_CASE("regularity reports") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<Point> ws;
    for (int k = 0; k < 30; ++k) ws.emplace_back(U(rng), U(rng));
    const RegularityReport sq = regularity_at(unit_square, 0.0, ws);
    CHECK(sq.kz_estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(sq.diverging());
    for (const auto& s : sq.samples) CHECK(s.quotient >= 1.0 - 1e-12);

    const int N = 8;
    const GalleryParams p = dented("sqrt", "4^-n");
    const PlaneSet set = materialize(GalleryKind::DentedSquare, p, N);
    // Witnesses on the top edges (0, s_{2n-1}) of the dents.
    const auto& mids = set.features().witnesses;
    const auto s = p.s.values(2 * N);
    const RegularityReport bad = regularity_at(set, 0.0, mids);
    CHECK(bad.diverging());
    for (int n = 1; n <= N; ++n)
        CHECK(bad.samples[n - 1].quotient >= 2 * p.r.at(n, &p.s) / s[2 * n - 2] * (1 - 1e-12));
    // The first two quotients against the grid oracle.
    for (int n = 1; n <= 2; ++n) {
        const double o = raster_geodesic(set, 0.0, mids[n - 1], 1.0 / 1024);
        CHECK(std::abs(bad.samples[n - 1].delta - o) / o <= 0.01);
    }

    const PlaneSet good = materialize(GalleryKind::DentedSquare, dented("s2n-1", "2^-n"), N);
    CHECK_FALSE(regularity_at(good, 0.0, good.features().witnesses).diverging());

    nlohmann::json j = bad;
    CHECK(j.at("verdict") == "diverging");
    CHECK(j.contains("kz"));
    CHECK(j.at("samples").size() == static_cast<std::size_t>(N));
}

TEST_CASE("dented square classification") {
    CHECK(classify_dented_square(dented("s2n-1", "2^-n"), 30).complete);
    CHECK_FALSE(classify_dented_square(dented("sqrt", "4^-n"), 30).complete);
    CHECK_FALSE(classify_dented_square(dented("n*s", "2^-n"), 30).complete);
    const auto v = classify_dented_square(dented("sqrt", "4^-n"), 5);
    CHECK(v.ratios[2] == doctest::Approx(std::pow(2.0, 5)).epsilon(1e-12));
}

TEST_CASE("classifier agrees with geodesic regularity") {
    for (auto [r, s] : {std::pair{"s2n-1", "2^-n"}, {"sqrt", "4^-n"}, {"n*s", "2^-n"}, {"2s", "4^-n"}}) {
        const GalleryParams p = dented(r, s);
        const int N = 16;
        const PlaneSet set = materialize(GalleryKind::DentedSquare, p, N);
        CHECK(regularity_at(set, 0.0, set.features().witnesses).diverging() == !classify_dented_square(p, N).complete);
    }
}

TEST_CASE("star centres") {
    const auto c = star_centre(unit_square);
    REQUIRE(c.has_value());
    CHECK(is_star_centre(unit_square, *c));
    const PlaneSet rsa = materialize(GalleryKind::RsaDisc, {}, 8);
    CHECK(star_centre(rsa).has_value());
    CHECK(is_star_centre(rsa, 0.0));
    const PlaneSet holed = PlaneSet::region({{0, 0}, {3, 0}, {3, 3}, {0, 3}}, {{{1, 1}, {1, 2}, {2, 2}, {2, 1}}});
    CHECK_FALSE(star_centre(holed).has_value());
}

TEST_CASE("metric invariants on a region with holes") {
    const PlaneSet set = PlaneSet::region({{0, 0}, {4, 0}, {4, 3}, {0, 3}},
                                          {{{1, 1}, {1, 2}, {2, 2}, {2, 1}}, {{2.5, 0.5}, {2.5, 2.5}, {3, 2.5}, {3, 0.5}}});
    const auto pts = sample_points(set, 30, 4);
    for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
        const Point a = pts[i], b = pts[i + 1], c = pts[i + 2];
        const double ab = geodesic_distance(set, a, b).length, ba = geodesic_distance(set, b, a).length;
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ab >= std::abs(a - b) * (1 - 1e-12));
        CHECK(geodesic_distance(set, a, c).length <= ab + geodesic_distance(set, b, c).length + 1e-12);
    }
    for (int i = 0; i < 5; ++i) {
        const GeodesicResult r = geodesic_distance(set, Point(0.5, 1.5), Point(3.5, 1.5 + 0.2 * i));
        for (Point v : r.vertices) CHECK(contains(set, v, 1e-9));
        CHECK(r.path().length() == doctest::Approx(r.length).epsilon(1e-12));
    }
}

TEST_CASE("skeleton geodesics") {
    const PlaneSet crossed = materialize(GalleryKind::CrossedSquare, {}, 3);
    const auto ws = crossed.features().witnesses;
    const Point z = *crossed.features().focus;
    for (Point w : ws) {
        const GeodesicResult r = geodesic_distance(crossed, z, w);
        CHECK(r.length >= std::abs(z - w));
        for (Point v : r.vertices) CHECK(contains(crossed, v, 1e-9));
    }
    const PlaneSet bad = materialize(GalleryKind::BadArc, {}, 3);
    const PolyPath& arc = bad.as_skeleton().arcs.front();
    CHECK(geodesic_distance(bad, arc.start(), arc.end()).length == doctest::Approx(arc.length()).epsilon(1e-12));
}
