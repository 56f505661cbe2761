#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "gcat/errors.hpp"
#include "gcat/lorentz.hpp"

using namespace gcat;
using namespace gcat::lorentz;

namespace {

double det3(const LVec3& a, const LVec3& b, const LVec3& c) {
    Eigen::Matrix3d m;
    m << a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2];
    return m.determinant();
}

double det4(const LVec4& a, const LVec4& b, const LVec4& c, const LVec4& d) {
    Eigen::Matrix4d m;
    m << a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3], c[0], c[1], c[2], c[3], d[0], d[1], d[2], d[3];
    return m.determinant();
}

}  // namespace

TEST_CASE("inner products on basis and null vectors") {
    CHECK(inner3({1, 0, 0}, {1, 0, 0}) == -1);
    CHECK(inner3({0, 1, 0}, {0, 1, 0}) == 1);
    CHECK(inner3({1, 1, 0}, {1, 1, 0}) == 0);
    CHECK(inner4({0, 0, 0, 1}, {0, 0, 0, 1}) == 1);
    CHECK(inner4({1, 0, 0, 0}, {1, 0, 0, 0}) == -1);
    const LVec4 ax(std::sinh(1.0), 0, 0, std::cosh(1.0));
    CHECK(inner4(ax, ax) == doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("non-finite components are rejected") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(LVec3(nan, 0, 0), DomainError);
    CHECK_THROWS_AS(LVec4(0, std::numeric_limits<double>::infinity(), 0, 0), DomainError);
}

TEST_CASE("lorentz cross product satisfies the determinant identity") {
    CHECK(cross_lorentz3({1, 2, 3}, {1, 2, 3}) == LVec3(0, 0, 0));
    CHECK(cross_lorentz3({0, 1, 0}, {0, 0, 1}) == LVec3(-1, 0, 0));
    CHECK(cross_lorentz3({1, 0, 0}, {0, 1, 0}) == LVec3(0, 0, 1));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int n = 0; n < 200; ++n) {
        const LVec3 a(U(rng), U(rng), U(rng)), b(U(rng), U(rng), U(rng)), c(U(rng), U(rng), U(rng));
        const LVec3 w = cross_lorentz3(a, b);
        CHECK(inner3(w, c) == doctest::Approx(det3(a, b, c)).epsilon(1e-12).scale(10));
        CHECK(std::abs(inner3(w, a)) < 1e-12);
        CHECK(std::abs(inner3(w, b)) < 1e-12);
    }
}

TEST_CASE("triple normal satisfies the determinant identity") {
    const LVec4 e0(1, 0, 0, 0), e1(0, 1, 0, 0), e2(0, 0, 1, 0), e3(0, 0, 0, 1);
    CHECK(triple_normal4(e0, e0, e1) == LVec4(0, 0, 0, 0));
    // inner4(N, e3) = det(e0;e1;e2;e3) = 1 and e3 is spacelike, so N = e3
    CHECK(triple_normal4(e0, e1, e2) == LVec4(0, 0, 0, 1));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-2, 2);
    auto r4 = [&] { return LVec4(U(rng), U(rng), U(rng), U(rng)); };
    for (int n = 0; n < 200; ++n) {
        const LVec4 p = r4(), q = r4(), r = r4(), c = r4();
        const LVec4 N = triple_normal4(p, q, r);
        CHECK(inner4(N, c) == doctest::Approx(det4(p, q, r, c)).epsilon(1e-12).scale(10));
        CHECK(std::abs(inner4(N, p)) < 1e-11);
    }
}

TEST_CASE("causal character") {
    CHECK(causal_character(LVec3(1, 1, 0), 1e-12).tag == Causal::Lightlike);
    CHECK(causal_character(LVec3(0, 1, 0), 1e-12).tag == Causal::Spacelike);
    CHECK(causal_character(LVec3(2, 1, 0), 1e-12).tag == Causal::Timelike);
    CHECK(causal_character(LVec4(0, 0, 0, 2)).tag == Causal::Spacelike);
    CHECK(classify_value(1e-13, 1e-12).tag == Causal::Lightlike);
    CHECK(classify_value(-1e-11, 1e-12).tag == Causal::Timelike);
    CHECK(classify_value(0.5, 1e-12).tolerance == 1e-12);
    CHECK_THROWS_AS(classify_value(1.0, -1), DomainError);
}

TEST_CASE("de Sitter membership") {
    CHECK(in_de_sitter({0, 0, 0, 1}, 1e-12));
    CHECK_FALSE(in_de_sitter({1, 0, 0, 0}, 1e-12));
    CHECK_FALSE(in_de_sitter({0, 1, 1, 1}, 1e-12));
    CHECK(in_de_sitter({std::sinh(1.0), 0, 0, std::cosh(1.0)}, 1e-12));
    CHECK(in_de_sitter({std::sinh(1.0), 0, 0, -std::cosh(1.0)}, 1e-12));
}

TEST_CASE("cone maps") {
    const std::vector<double> e1{1, 0}, e2{0, 1};
    CHECK(double_cone_map(0, e2) == std::vector<double>{0, 0, 0});
    CHECK(double_cone_map(1, e1) == std::vector<double>{1, 0, 1});
    CHECK(double_cone_map(-2, e2) == std::vector<double>{0, -2, -2});
    CHECK(cone_map(0, e1) == std::vector<double>{0, 0, 0});
    CHECK(cone_map(1, e1) == std::vector<double>{1, 0, 1});
    CHECK(cone_map(-1, e1) == std::vector<double>{1, 0, 1});
    const std::vector<double> bad{1, 1};
    CHECK_THROWS_AS(cone_map(1, bad), DomainError);
    // image lies on the light cone |x|^2 = t^2
    const double a = 0.3;
    const std::vector<double> P{std::cos(a), std::sin(a)};
    const auto y = double_cone_map(1.7, P);
    CHECK(y[0] * y[0] + y[1] * y[1] == doctest::Approx(y[2] * y[2]));
}
