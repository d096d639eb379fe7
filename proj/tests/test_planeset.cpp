#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "planefn/errors.hpp"
#include "planefn/planeset.hpp"
#include "planefn/svg.hpp"

using namespace planefn;
using boost::multiprecision::cpp_int;

namespace {

// Cantor function from an exact ternary expansion of the double x = m 2^-e:
// 60 ternary digits by integer long division, stopping at the first digit 1.
double cantor_oracle(double x) {
    int e = 0;
    double m = std::frexp(x, &e);
    cpp_int num = static_cast<long long>(std::ldexp(m, 53));
    cpp_int den = cpp_int(1) << (53 - e);
    double value = 0.0, bit = 0.5;
    for (int k = 0; k < 60; ++k) {
        num *= 3;
        const int digit = static_cast<int>(num / den);
        num -= digit * den;
        if (digit == 1) return value + bit;
        if (digit == 2) value += bit;
        bit /= 2;
    }
    return value;
}

int count(const std::string& text, const std::string& needle) {
    int n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

bool has_vertex(const Ring& r, Point p, double tol) {
    return std::any_of(r.begin(), r.end(), [&](Point v) { return std::abs(v - p) <= tol; });
}

const PlaneSet unit_square = PlaneSet::region({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

}  // namespace

TEST_CASE("bad arc at depth 1") {
    const PlaneSet s = materialize(GalleryKind::BadArc, {}, 1);
    REQUIRE(s.is_skeleton());
    const auto& v = s.as_skeleton().arcs.front().vertices();
    const std::vector<Point> want{0.5, Point(0.5, 0.5), Point(0.375, 0.5), 0.375, 0.25};
    REQUIRE(v.size() >= want.size());
    for (std::size_t k = 0; k < want.size(); ++k) CHECK(v[k] == want[k]);
    const auto& iso = s.isolated_points();
    CHECK((std::find(iso.begin(), iso.end(), Point(0.0)) != iso.end() || v.back() == Point(0.0)));
}

TEST_CASE("rsa disc at depth 1 has the sector vertex") {
    const PlaneSet s = materialize(GalleryKind::RsaDisc, {}, 1);
    const double pi = std::numbers::pi;
    const double beta1 = 0.5 * (pi / 4 + pi / 16);
    CHECK(has_vertex(s.as_region().outer, std::polar(0.5, beta1), 1e-15));
}

TEST_CASE("dented square with three dents") {
    GalleryParams p;
    const PlaneSet s = materialize(GalleryKind::DentedSquare, p, 3);
    const Ring& r = s.as_region().outer;
    CHECK(r.size() == 4 + 4 * 3);
    for (int n = 1; n <= 3; ++n) {
        const double top = std::pow(2.0, -(2 * n - 1)), bot = std::pow(2.0, -2 * n);
        CHECK(has_vertex(r, Point(top, top), 0));
        CHECK(has_vertex(r, Point(top, bot), 0));
        CHECK_FALSE(contains(s, Point(0.5 * top, 0.5 * (top + bot))));
    }
    CHECK(contains(s, Point(0.9, 0.9)));
    CHECK(s.features().ratios == std::vector<double>{1, 1, 1});
}

TEST_CASE("invalid gallery parameters") {
    GalleryParams p;
    p.s = SequenceRule::table({0.5, 0.6, 0.1, 0.05, 0.01, 0.001, 0.0001});
    CHECK_THROWS_AS(materialize(GalleryKind::DentedSquare, p, 3), ParameterError);
    GalleryParams q;
    q.r = SequenceRule::parse("2s");  // r_1 = 2 s_1 = 1 is not in (0, 1)
    CHECK_THROWS_AS(materialize(GalleryKind::DentedSquare, q, 3), ParameterError);
    CHECK_THROWS_AS(materialize(GalleryKind::BadArc, {}, 0), ParameterError);
    CHECK_THROWS_AS(SequenceRule::parse("fibonacci"), ParameterError);
}

TEST_CASE("contains") {
    CHECK(contains(unit_square, Point(0.5, 0.5)));
    CHECK_FALSE(contains(unit_square, Point(2, 0)));
    CHECK(contains(unit_square, Point(1, 0.5)));
    const PlaneSet bad = materialize(GalleryKind::BadArc, {}, 3);
    CHECK(contains(bad, Point(0.375, 0.25), 1e-9));
    CHECK(contains(bad, Point(0.0), 1e-9));
    CHECK_FALSE(contains(bad, Point(0.45, 0.25), 1e-9));
}

TEST_CASE("hull") {
    const PlaneSet ring = PlaneSet::region({{0, 0}, {3, 0}, {3, 3}, {0, 3}}, {{{1, 1}, {1, 2}, {2, 2}, {2, 1}}});
    const PlaneSet h = hull(ring);
    CHECK(h.as_region().holes.empty());
    CHECK(h.as_region().outer == ring.as_region().outer);
    CHECK(hull(unit_square).as_region().outer == unit_square.as_region().outer);

    const PlaneSet crossed = materialize(GalleryKind::CrossedSquare, {}, 4);
    const PlaneSet hc = hull(crossed);
    REQUIRE(hc.is_region());
    CHECK(std::abs(signed_area(hc.as_region().outer)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(contains(hc, Point(0.3, 0.77)));
    const PlaneSet hh = hull(hc);
    CHECK(hh.as_region().outer == hc.as_region().outer);
}

TEST_CASE("cantor function values") {
    CHECK(cantor_function(1.0 / 3) == 0.5);
    CHECK(cantor_function(0.25) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(cantor_oracle(0.25) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(cantor_function(1.0) == 1.0);
    CHECK(cantor_function(0.0) == 0.0);
    CHECK_THROWS_AS(cantor_function(1.5), DomainError);
    CHECK_THROWS_AS(cantor_function(-0.1), DomainError);
}

TEST_CASE("cantor function against the ternary oracle") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = U(rng);
    std::sort(xs.begin(), xs.end());
    double prev = 0.0;
    bool monotone = true;
    double worst = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double g = cantor_function(xs[k]);
        monotone = monotone && g >= prev;
        prev = g;
        if (k % 50 == 0) worst = std::max(worst, std::abs(g - cantor_oracle(xs[k])));
    }
    CHECK(monotone);
    CHECK(worst <= 1e-12);
    for (auto [a, b] : cantor_complementary_intervals(5)) {
        const double ga = cantor_function(a);
        for (int k = 1; k < 10; ++k) CHECK(cantor_function(a + (b - a) * k / 10) == doctest::Approx(ga).epsilon(1e-14));
    }
}

TEST_CASE("complementary intervals") {
    const auto iv = cantor_complementary_intervals(2);
    REQUIRE(iv.size() == 3);
    CHECK(iv[0].first == doctest::Approx(1.0 / 9));
    CHECK(iv[1].first == doctest::Approx(1.0 / 3));
    CHECK(iv[1].second == doctest::Approx(2.0 / 3));
    CHECK(cantor_complementary_intervals(6).size() == 63);
}

TEST_CASE("svg output") {
    const std::string sq = to_svg(unit_square);
    CHECK(count(sq, "<path") == 1);
    CHECK(count(sq, "<svg") == 1);
    const PlaneSet cs = materialize(GalleryKind::CantorSquares, {}, 4);
    int raised = 0;
    for (Point v : cs.as_region().outer) raised += v.imag() > 0;
    CHECK(raised == 2 * 15);
    CHECK(count(to_svg(cs), "<path") == 1);
    const PlaneSet rsa = materialize(GalleryKind::RsaDisc, {}, 8);
    int cuts = 0;
    for (Point v : rsa.as_region().outer) cuts += std::abs(v) < 0.99;
    CHECK(cuts == 8);
    const PlaneSet bad = materialize(GalleryKind::BadArc, {}, 3);
    const std::string bs = to_svg(bad);
    CHECK(count(bs, "<polyline") == static_cast<int>(bad.as_skeleton().arcs.size()));
    CHECK(count(bs, "<circle") == static_cast<int>(bad.isolated_points().size()));
}

TEST_CASE("depth monotonicity") {
    GalleryParams p;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    const PlaneSet d3 = materialize(GalleryKind::DentedSquare, p, 3), d4 = materialize(GalleryKind::DentedSquare, p, 4);
    for (int k = 0; k < 2000; ++k) {
        const Point z(U(rng), U(rng));
        if (contains(d4, z)) CHECK(contains(d3, z));
    }
    const PlaneSet r3 = materialize(GalleryKind::RsaDisc, p, 3), r4 = materialize(GalleryKind::RsaDisc, p, 4);
    for (int k = 0; k < 2000; ++k) {
        const Point z(2 * U(rng) - 1, 2 * U(rng) - 1);
        if (contains(r4, z)) CHECK(contains(r3, z, 1e-12));
    }
    const PlaneSet b2 = materialize(GalleryKind::BadArc, p, 2), b3 = materialize(GalleryKind::BadArc, p, 3);
    for (Point v : b2.as_skeleton().arcs.front().vertices()) CHECK(contains(b3, v, 1e-12));
    const PlaneSet c2 = materialize(GalleryKind::CantorSquares, p, 2), c3 = materialize(GalleryKind::CantorSquares, p, 3);
    for (int k = 0; k < 2000; ++k) {
        const Point z(U(rng), U(rng) * 0.4);
        if (contains(c2, z)) CHECK(contains(c3, z));
    }
}

TEST_CASE("json round trip") {
    GalleryParams p;
    p.r = SequenceRule::parse("sqrt");
    p.s = SequenceRule::parse("4^-n");
    const PlaneSet s = materialize(GalleryKind::DentedSquare, p, 3);
    nlohmann::json j = s;
    CHECK(j.at("kind") == "dented-square");
    const PlaneSet back = planeset_from_json(j);
    CHECK(back.as_region().outer == s.as_region().outer);

    const nlohmann::json region = {{"outer", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}}};
    CHECK(planeset_from_json(region).as_region().outer == unit_square.as_region().outer);
    const nlohmann::json sk = {{"arcs", {{{0, 0}, {1, 0}}}}};
    CHECK(planeset_from_json(sk).is_skeleton());
    CHECK_THROWS_AS(planeset_from_json(nlohmann::json{{"foo", 1}}), ParameterError);
    CHECK_THROWS_AS(parse_gallery_kind("moebius"), ParameterError);
}

TEST_CASE("sequence rules") {
    const SequenceRule s = SequenceRule::parse("2^-n");
    CHECK(s.at(3) == 0.125);
    CHECK(SequenceRule::parse("s2n-1").at(2, &s) == 0.125);
    CHECK(SequenceRule::parse("n*s").at(2, &s) == 0.25);
    CHECK(SequenceRule::parse("sqrt").at(1, &s) == doctest::Approx(std::sqrt(0.5)));
    CHECK(SequenceRule::parse("power:1").at(4) == 0.25);
    CHECK(SequenceRule::parse(SequenceRule::parse("geometric:0.3").to_string()).at(2) == doctest::Approx(0.09));
}

TEST_CASE("skeleton planarization") {
    const PlaneSet crossed = materialize(GalleryKind::CrossedSquare, {}, 3);
    const SkeletonGraph g = planarize(crossed.as_skeleton());
    CHECK(g.component_count() == 1);
    CHECK(g.cyclomatic_number() > 0);
    const PlaneSet bad = materialize(GalleryKind::BadArc, {}, 3);
    CHECK(planarize(bad.as_skeleton()).cyclomatic_number() == 0);
}
