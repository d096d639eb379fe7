#include <doctest.h>

#include <cmath>
#include <random>

#include "planefn/errors.hpp"
#include "planefn/geom.hpp"

using namespace planefn;

namespace {

const PolyPath unit_segment({0.0, 1.0});
const PolyPath right_angle({0.0, 1.0, Point(1, 1)});
const PolyPath j_one({0.5, Point(0.5, 0.5), Point(0.375, 0.5), 0.375, 0.25});

}  // namespace

TEST_CASE("arc length of basic paths") {
    CHECK(arc_length(unit_segment) == 1.0);
    CHECK(arc_length(j_one) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(arc_length(right_angle) == 2.0);
    CHECK(j_one.cumlen().back() == arc_length(j_one));
}

TEST_CASE("arc-length reparametrization") {
    const auto seg = reparametrize_by_arclength(unit_segment);
    for (double t : {0.0, 0.25, 0.7, 1.0}) CHECK(seg(t) == Point(t, 0));
    CHECK(std::abs(reparametrize_by_arclength(right_angle)(1.5) - Point(1, 0.5)) < 1e-15);
    CHECK(std::abs(reparametrize_by_arclength(j_one)(0.5) - Point(0.5, 0.5)) < 1e-15);
    for (std::size_t k = 0; k < j_one.vertices().size(); ++k) CHECK(j_one.at(j_one.cumlen()[k]) == j_one.vertices()[k]);
}

TEST_CASE("subpath examples") {
    const PolyPath a = subpath(unit_segment, 0.0, 0.5);
    CHECK(a.length() == 0.5);
    CHECK(a.end() == Point(0.5, 0));
    const PolyPath b = subpath(right_angle, 0.5, 1.5);
    REQUIRE(b.vertices().size() == 3);
    CHECK(b.vertices()[0] == Point(0.5, 0));
    CHECK(b.vertices()[1] == Point(1, 0));
    CHECK(std::abs(b.vertices()[2] - Point(1, 0.5)) < 1e-15);
    const PolyPath c = subpath(j_one, 0.0, j_one.length());
    CHECK(c.length() == doctest::Approx(j_one.length()).epsilon(1e-15));
    CHECK_THROWS_AS(subpath(unit_segment, 0.5, 0.5), ParameterError);
    CHECK_THROWS_AS(subpath(unit_segment, 0.6, 0.5), ParameterError);
}

TEST_CASE("admissibility") {
    const std::vector<Point> ok{0.0, 1.0}, repeat{0.0, 0.0, 1.0}, retrace{0.0, 1.0, 0.0};
    CHECK(is_admissible(ok));
    CHECK_FALSE(is_admissible(repeat));
    CHECK(is_admissible(retrace));
    CHECK_THROWS_AS(PolyPath{repeat}, ParameterError);
    CHECK_THROWS_AS(PolyPath(std::vector<Point>{1.0}), ParameterError);
}

TEST_CASE("path invariants on random polylines") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 20; ++t) {
        std::vector<Point> v;
        for (int k = 0; k < 3 + t; ++k) v.emplace_back(U(rng), U(rng));
        const PolyPath p(v);
        CHECK(p.length() >= std::abs(p.end() - p.start()));
        for (std::size_t k = 0; k + 1 < v.size(); ++k)
            CHECK(p.cumlen()[k + 1] - p.cumlen()[k] == doctest::Approx(std::abs(v[k + 1] - v[k])).epsilon(1e-15));
        const auto map = reparametrize_by_arclength(p);
        CHECK(map(0) == p.start());
        CHECK(map(p.length()) == p.end());
        std::uniform_real_distribution<double> S(0, p.length());
        for (int q = 0; q < 10000; ++q) {
            const double s = S(rng), r = S(rng);
            CHECK_LE(std::abs(map(s) - map(r)), std::abs(s - r) * (1 + 1e-12) + 1e-15);
        }
        double a = S(rng), b = S(rng), c = S(rng);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        if (a < b && b < c) {
            const double sum = subpath(p, a, b).length() + subpath(p, b, c).length();
            CHECK(sum == doctest::Approx(subpath(p, a, c).length()).epsilon(1e-12));
        }
    }
}

TEST_CASE("concatenate and reverse") {
    const PolyPath a({0.0, 1.0}), b({1.0, Point(1, 1)});
    const std::vector<PolyPath> parts{a, b};
    CHECK(concatenate(parts) == right_angle);
    CHECK(right_angle.reversed().start() == Point(1, 1));
    CHECK_THROWS_AS(concatenate(std::vector<PolyPath>{a, a}), ParameterError);
}

TEST_CASE("arc points") {
    const auto v = arc_points(0.0, 1.0, 0.0, std::acos(-1.0), 64);
    CHECK(v.size() == 129);
    for (Point p : v) CHECK(std::abs(std::abs(p) - 1.0) < 1e-15);
}

TEST_CASE("segment helpers") {
    CHECK(segments_intersect(0.0, Point(1, 1), Point(0, 1), Point(1, 0)));
    CHECK(segments_intersect(0.0, 1.0, 1.0, 2.0));
    CHECK_FALSE(segments_intersect(0.0, 1.0, Point(0, 1), Point(1, 1)));
    double t = -1;
    CHECK(segment_distance(Point(0.5, 2), 0.0, 1.0, &t) == 2.0);
    CHECK(t == 0.5);
}
