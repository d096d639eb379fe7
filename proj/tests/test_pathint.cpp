#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "planefn/badarc.hpp"
#include "planefn/errors.hpp"
#include "planefn/pathint.hpp"
#include "planefn/planeset.hpp"

using namespace planefn;

namespace {

const FunctionExpr Z = FunctionExpr::z();
const Complex I1{1.0, 1.0};
const FunctionExpr F = Complex(1.0) / I1 * FunctionExpr::ppow(Z, I1);  // z^{1+i}/(1+i)
const FunctionExpr Fp = FunctionExpr::ppow(Z, Complex(0, 1));           // z^i
const PolyPath segment({0.0, 1.0});
const PolyPath right_angle({0.0, 1.0, Point(1, 1)});
const PlaneSet unit_square = PlaneSet::region({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

PolyPath semicircle(int chords) {
    return PolyPath(arc_points(0.0, 1.0, 0.0, std::numbers::pi, chords / 2));
}

std::vector<PolyPath> random_paths(std::mt19937_64& rng, int count, Point lo, Point hi) {
    std::uniform_real_distribution<double> X(lo.real(), hi.real()), Y(lo.imag(), hi.imag());
    std::vector<PolyPath> out;
    for (int i = 0; i < count; ++i) {
        std::vector<Point> v;
        for (int k = 0; k < 5; ++k) v.emplace_back(X(rng), Y(rng));
        out.emplace_back(v);
    }
    return out;
}

bool same_on(const FunctionExpr& a, const FunctionExpr& b, const std::vector<Point>& pts) {
    for (Point p : pts)
        if (std::abs(a(p) - b(p)) > 1e-12 * (1 + std::abs(b(p)))) return false;
    return true;
}

}  // namespace

TEST_CASE("expression basics") {
    const FunctionExpr p = pow(Z, 3) - Complex(2.0) * Z + Complex(1.0);
    CHECK(p(Point(2, 0)) == Complex(5.0));
    CHECK(p.derivative()(Point(2, 0)) == Complex(10.0));
    CHECK((Z * Complex(0.0)).is_constant());
    CHECK(Fp(Point(0, 1)).real() == doctest::Approx(std::exp(-std::numbers::pi / 2)).epsilon(1e-15));
    CHECK_THROWS_AS(Fp(Point(-1, 0)), DomainError);
    CHECK_THROWS_AS(Fp(Point(0, 0)), DomainError);
    CHECK_THROWS_AS(FunctionExpr::cantor(Z)(Point(2, 0)), DomainError);
    const FunctionExpr back = function_expr_from_json(nlohmann::json(F * Z + FunctionExpr::cantor(Z)));
    for (Point q : {Point(0.3, 0.2), Point(0.9, -0.1)}) CHECK(back(q) == (F * Z + FunctionExpr::cantor(Z))(q));
    CHECK_FALSE(F.to_string().empty());
}

TEST_CASE("path integral examples") {
    CHECK(std::abs(path_integral(Complex(2.0) * Z, segment).value - 1.0) < 1e-14);
    CHECK(std::abs(path_integral(Complex(1.0), right_angle).value - Point(1, 1)) < 1e-14);
    const PolyPath arc = semicircle(512);
    REQUIRE(arc.segment_count() == 512);
    const Complex delta = F(arc.end()) - F(arc.start());
    CHECK(std::abs(path_integral(Fp, arc, {1e-12, 20}).value - delta) / std::abs(delta) <= 1e-6);
    const PolyPath crossing({Point(-1, 1), Point(-1, -1)});
    CHECK_THROWS_AS(path_integral(Fp, crossing), DomainError);
}

TEST_CASE("integral additivity under splitting") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(0, 1);
    for (const PolyPath& p : random_paths(rng, 10, {0, 0}, {1, 1})) {
        const FunctionExpr f = FunctionExpr::cos(Z) * pow(Z, 2);
        const double s = U(rng) * p.length();
        if (s <= 0 || s >= p.length()) continue;
        const Complex whole = path_integral(f, p, {1e-13, 20}).value;
        const Complex parts = path_integral(f, subpath(p, 0, s), {1e-13, 20}).value +
                              path_integral(f, subpath(p, s, p.length()), {1e-13, 20}).value;
        CHECK(std::abs(whole - parts) <= 1e-10);
    }
}

TEST_CASE("fundamental theorem checks") {
    std::mt19937_64 rng(9);
    for (const PolyPath& p : random_paths(rng, 5, {0, 0}, {1, 1})) CHECK(ftc_check(pow(Z, 3), Complex(3.0) * pow(Z, 2), p).pass);
    CHECK(ftc_check(F, Fp, semicircle(512), 1e-6).pass);
    const FtcReport c = ftc_check(FunctionExpr::cantor(Z), FunctionExpr(), segment);
    CHECK_FALSE(c.pass);
    CHECK(c.defect == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("F-derivative families") {
    std::mt19937_64 rng(10);
    const PathFamily sq(random_paths(rng, 4, {0, 0}, {1, 1}), unit_square, 0.5);
    CHECK(verify_fderivative(FDerivPair::of(pow(Z, 2)), sq).pass);

    const PlaneSet cs = materialize(GalleryKind::CantorSquares, {}, 3);
    const FDerivPair cantor{FunctionExpr::cantor(Z), FunctionExpr()};
    std::vector<PolyPath> inside;
    for (auto [a, b] : cantor_complementary_intervals(2))
        inside.emplace_back(std::vector<Point>{Point(a, 0.5 * (b - a)), Point(b, 0.5 * (b - a))});
    CHECK(verify_fderivative(cantor, PathFamily(inside)).pass);
    CHECK_FALSE(verify_fderivative(cantor, PathFamily({segment})).pass);

    const PathFamily d0(random_paths(rng, 4, {0.1, -1}, {2, 1}));
    CHECK(verify_fderivative({F, Fp}, d0, {1e-6, 8, 0}).pass);
}

TEST_CASE("product rule") {
    const auto zz = verify_product_rule(FDerivPair::of(Z), FDerivPair::of(Z), PathFamily({segment}));
    CHECK(zz.pass);
    std::mt19937_64 rng(11);
    const PathFamily fam(random_paths(rng, 5, {-1, -1}, {1, 1}));
    CHECK(verify_product_rule(FDerivPair::of(pow(Z, 2)), FDerivPair::of(pow(Z, 3)), fam).pass);
    const PathFamily d0(random_paths(rng, 5, {0.1, -1}, {2, 1}));
    CHECK(verify_product_rule({F, Fp}, FDerivPair::of(Z), d0, {1e-6, 8, 0}).pass);
    const FDerivPair wrong{pow(Z, 2), Z};
    CHECK_THROWS_AS(verify_product_rule(wrong, FDerivPair::of(Z), fam), PreconditionError);
}

TEST_CASE("interval decomposition") {
    const auto whole = interval_decomposition(pow(Z, 2), Complex(2.0) * Z, right_angle, 1e-9, 10);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].first == 0.0);
    CHECK(whole[0].second == doctest::Approx(2.0));

    const auto cantor = interval_decomposition(FunctionExpr::cantor(Z), FunctionExpr(), segment, 1e-9, 729);
    const auto want = cantor_complementary_intervals(6);
    REQUIRE(cantor.size() == want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
        CHECK(std::abs(cantor[k].first - want[k].first) <= 1e-12);
        CHECK(std::abs(cantor[k].second - want[k].second) <= 1e-12);
    }

    const FunctionExpr bent = FunctionExpr::piecewise(
        segment, {{0.0, 0.5, Z, FunctionExpr(Complex(1.0))}, {0.5, 1.0, Z + pow(Z - Complex(0.5), 2), FunctionExpr(Complex(1.0))}});
    const auto half = interval_decomposition(bent, Complex(1.0), segment, 1e-9, 16);
    REQUIRE(half.size() == 1);
    CHECK(half[0].first == 0.0);
    CHECK(half[0].second == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("norms and quotients") {
    const auto samples = sample_points(unit_square, 128, 0);
    CHECK(diff_norm(Z, Complex(1.0), samples) == doctest::Approx(1 + std::sqrt(2.0)).epsilon(1e-15));
    CHECK(diff_norm(Complex(0.0, 3.0), Complex(0.0), unit_square) == doctest::Approx(3.0));

    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> R(0.5, 2.0), A(-3.0, 3.0);
    const FunctionExpr G = FunctionExpr::ppow(Z, I1);
    const double pi = std::numbers::pi;
    for (int k = 0; k < 2000; ++k) {
        const Point z = std::polar(R(rng), A(rng));
        const double g = std::abs(G(z)), gp = std::abs(G.derivative()(z));
        CHECK(g >= std::exp(-pi) * std::abs(z));
        CHECK(g <= std::exp(pi) * std::abs(z));
        CHECK(gp >= std::sqrt(2.0) * std::exp(-pi));
        CHECK(gp <= std::sqrt(2.0) * std::exp(pi));
    }

    CHECK(lipschitz_quotient(Z, Point(0.3, 0.1), Point(-2, 5)) == doctest::Approx(1.0).epsilon(1e-15));
    const FunctionExpr f = bad_arc_function(5);
    using D = BadArcExact<double>;
    CHECK(lipschitz_quotient(f, D::x(1), D::x_prime(1)) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(lipschitz_quotient(f, D::x(2), D::x_prime(2)) == doctest::Approx(16.0 / 3).epsilon(1e-13));
    CHECK_THROWS_AS(lipschitz_quotient(Z, 0.5, 0.5), DomainError);
    CHECK(lip_seminorm(Z, unit_square) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bad arc quotients in exact arithmetic") {
    using E = BadArcExact<Rational>;
    // Oracle from the vertex data alone: f(z_n) = x_n / n, f(z'_n) = x_{n+1} / (n+1).
    for (int n = 1; n <= 20; ++n) {
        const Rational xn = Rational(1) / (boost::multiprecision::cpp_int(1) << n);
        const Rational xn1 = xn / 2;
        const Rational gap = xn / n - xn1 / (n + 1);
        const Rational width = Rational(1) / (boost::multiprecision::cpp_int(1) << (3 * n));
        CHECK(E::quotient(n) == gap / width);
        CHECK(E::quotient(n) == E::formula(n));
    }
    CHECK(E::quotient(12) < Rational(1000000));
    CHECK(E::quotient(13) > Rational(1000000));
}

TEST_CASE("bad arc function along the arc") {
    const FunctionExpr f = bad_arc_function(4);
    const PlaneSet arc = materialize(GalleryKind::BadArc, {}, 4);
    const PolyPath& p = arc.as_skeleton().arcs.front();
    CHECK(ftc_check(f, f.derivative(), p, 1e-9).pass);
    CHECK(f(0.5).real() == doctest::Approx(0.5));
}

TEST_CASE("semidirect product") {
    std::mt19937_64 rng(13);
    const auto pts = sample_points(unit_square, 64, 1);
    const SemidirectElement one{Complex(1.0), Complex(0.0)};
    const SemidirectElement a{pow(Z, 2) + Complex(1.0), FunctionExpr::cos(Z)};
    const SemidirectElement ia = semidirect_multiply(one, a);
    CHECK(same_on(ia.f, a.f, pts));
    CHECK(same_on(ia.g, a.g, pts));
    const SemidirectElement e{Complex(0.0), Complex(1.0)};
    const SemidirectElement ee = semidirect_multiply(e, e);
    CHECK(ee.f.constant_value() == Complex(0.0));
    CHECK(ee.g.constant_value() == Complex(0.0));
    const SemidirectElement zz = semidirect_multiply(iota(Z), iota(Z));
    CHECK(same_on(zz.f, pow(Z, 2), pts));
    CHECK(same_on(zz.g, Complex(2.0) * Z, pts));
    const SemidirectElement b{Z - Complex(0.5), pow(Z, 3)};
    CHECK(semidirect_norm(semidirect_multiply(a, b), pts) <=
          semidirect_norm(a, pts) * semidirect_norm(b, pts) * (1 + 1e-12));
    const FunctionExpr q = FunctionExpr::polynomial({Complex(1, 2), Complex(0, -1), Complex(0.5)});
    CHECK(semidirect_norm(iota(q), pts) == diff_norm(q, q.derivative(), pts));
}

TEST_CASE("path family effectiveness") {
    const PathFamily sparse({PolyPath({0.0, 0.1})}, unit_square, 0.05);
    CHECK_FALSE(sparse.effective());
    const PathFamily dense({PolyPath({0.0, 1.0, Point(1, 1), Point(0, 1), 0.0})}, unit_square, 1e-9);
    CHECK(dense.effective());
}
