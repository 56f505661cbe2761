#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gcat/curvature.hpp"
#include "gcat/errors.hpp"
#include "gcat/zoo.hpp"

using namespace gcat;
using namespace gcat::curvature;
using gcat::zoo::FamilyId;
using gcat::zoo::Kind;

namespace {

constexpr double kPi = std::numbers::pi;

Domain plane_domain() { return {}; }

Surface plane() {
    return Surface::from_generic("plane", AmbientKind::R31, plane_domain(), [](auto u, auto v) {
        using T = decltype(u);
        return CoordsT<T>{T(0), u, v, T(0)};
    });
}

// Printed variant with t and r exchanged.
Surface printed_e() {
    Domain d;
    d.v = {0, 2 * kPi, true};
    return Surface::from_generic("printed-e", AmbientKind::R31, d, [](auto u, auto v) {
        using T = decltype(u);
        using std::cos, std::sin, std::sinh;
        return CoordsT<T>{sinh(u), u * cos(v), u * sin(v), T(0)};
    });
}

Surface sphere_slice() {
    return Surface::from_generic("sphere", AmbientKind::S31, plane_domain(), [](auto u, auto v) {
        using T = decltype(u);
        using std::cos, std::sin;
        return CoordsT<T>{T(0), sin(u) * cos(v), sin(u) * sin(v), cos(u)};
    });
}

Surface k_graph() {
    return Surface::from_generic("k-graph", AmbientKind::R31, plane_domain(), [](auto x, auto y) {
        using T = decltype(x);
        using std::tanh;
        return CoordsT<T>{y * tanh(x), x, y, T(0)};
    });
}

FundForms forms(const Surface& s, double u, double v, DiffSpec how = DiffSpec::dual()) {
    return fund_forms(jet2(s, u, v, how));
}

}  // namespace

TEST_CASE("plane jet is exact") {
    const Jet2 j = jet2(plane(), 0.4, -1.2);
    CHECK(j.fu == Coords{0, 1, 0, 0});
    CHECK(j.fv == Coords{0, 0, 1, 0});
    CHECK(j.fuu == Coords{0, 0, 0, 0});
    CHECK(j.fuv == Coords{0, 0, 0, 0});
    CHECK(j.fvv == Coords{0, 0, 0, 0});
    const FundForms ff = fund_forms(j);
    CHECK(ff.B == 1);
    CHECK(zmc_residual(ff) == 0);
    CHECK(mean_curvature(ff) == 0);
}

TEST_CASE("first fundamental form against hand-derived determinants") {
    // f_E: P = diag(sinh^2 u, sinh^2 u)
    const Surface e = zoo::surface(FamilyId(Kind::E));
    CHECK(forms(e, 1.0, 0.3).B == doctest::Approx(std::pow(std::sinh(1.0), 4)).epsilon(1e-13));
    CHECK(forms(e, 1.0, 0.0).B > 0);
    // f_K: P = diag(sin^2 v, sin^2 v)
    const Surface k = zoo::surface(FamilyId(Kind::K));
    CHECK(forms(k, 0.8, 0.2).B == doctest::Approx(std::pow(std::sin(0.2), 4)).epsilon(1e-12));
    // entire graph: B = sech^2 x (1 - y^2 sech^2 x)
    const double x = 2, y = 5, s2 = 1 / (std::cosh(x) * std::cosh(x));
    CHECK(forms(k_graph(), x, y).B == doctest::Approx(s2 * (1 - y * y * s2)).epsilon(1e-12));
}

TEST_CASE("zero mean curvature families") {
    CHECK(std::abs(zmc_residual(forms(zoo::surface(FamilyId(Kind::E)), 1, 0.3))) < 1e-8);
    CHECK(std::abs(zmc_residual(forms(zoo::surface(FamilyId(Kind::P)), 0.5, -0.2))) < 1e-8);
    CHECK(std::abs(zmc_residual(forms(zoo::surface(FamilyId(Kind::H)), 0.4, 1.3))) < 1e-8);
    CHECK(std::abs(zmc_residual(forms(zoo::surface(FamilyId(Kind::K)), 0.4, 1.3))) < 1e-8);
    CHECK(std::abs(mean_curvature(forms(zoo::surface(FamilyId(Kind::E)), 1, 0))) < 1e-7);
}

TEST_CASE("printed E variant is timelike and not maximal") {
    const double u = 1.0;
    const FundForms ff = forms(printed_e(), u, 0.3);
    CHECK(ff.B == doctest::Approx(-u * u * std::sinh(u) * std::sinh(u)).epsilon(1e-12));
    const double a = u * u * std::sinh(u) * (u - std::sinh(u) * std::cosh(u));
    CHECK(std::abs(ff.A) == doctest::Approx(std::abs(a)).epsilon(1e-10));
    CHECK(std::abs(ff.A) > 0.1);
}

TEST_CASE("CMC-1 families") {
    const FundForms te = forms(zoo::surface(FamilyId(Kind::TE, 2)), 0.7, 1.1);
    CHECK(cmc1_relative(te) < 1e-6);
    CHECK(std::abs(mean_curvature(te)) == doctest::Approx(1).epsilon(1e-6));
    CHECK(cmc1_relative(forms(zoo::surface(FamilyId(Kind::SP)), 0.3, 1.4)) < 1e-6);
    CHECK(cmc1_residual(te) == doctest::Approx(te.A * te.A - 4 * te.B * te.B * te.B));

    // totally geodesic sphere: H = 0, so the residual stays away from zero
    const FundForms sp = forms(sphere_slice(), 0.7, 0.4);
    CHECK(std::abs(sp.A) < 1e-12);
    CHECK(cmc1_relative(sp) > 1e-2);
}

TEST_CASE("causal classification of surface points") {
    CHECK(classify_surface_point(forms(zoo::surface(FamilyId(Kind::K)), 1, 0.2)).tag == lorentz::Causal::Spacelike);
    CHECK(classify_surface_point(forms(k_graph(), 2, 5)).tag == lorentz::Causal::Timelike);
    CHECK(classify_surface_point(forms(zoo::surface(FamilyId(Kind::K)), 0, 0)).tag == lorentz::Causal::Lightlike);
    CHECK_THROWS_AS(mean_curvature(forms(zoo::surface(FamilyId(Kind::K)), 0, 0)), LightlikePoint);
}

TEST_CASE("dual and central differentiation agree") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> S(-1.5, 1.5), A(0.1, 6.1);
    for (auto id : {FamilyId(Kind::TE, 2), FamilyId(Kind::SH, 0.5), FamilyId(Kind::P), FamilyId(Kind::LH)}) {
        const Surface s = zoo::surface(id);
        for (int n = 0; n < 20; ++n) {
            const double u = S(rng), v = id.kind() == Kind::P ? S(rng) : A(rng);
            const FundForms d = forms(s, u, v), c = forms(s, u, v, DiffSpec::central(1e-4));
            const double scale = 1 + d.P.norm() + d.Q.norm();
            CHECK((d.P - c.P).norm() < 1e-6 * scale);
            CHECK((d.Q - c.Q).norm() < 1e-5 * scale);
        }
    }
}

// Swapping (u,v) reverses the orientation of the cross-product normal: B is
// unchanged and A changes sign, so A^2 and the CMC-1 residual are invariant.
TEST_CASE("fundamental-form invariants under parameter swap") {
    const Surface te = zoo::surface(FamilyId(Kind::TE, 2));
    const Surface swapped("swapped", AmbientKind::S31, Domain{},
                          [&](double a, double b) { return te(b, a); },
                          [&](const Dual2<double>& a, const Dual2<double>& b) { return te.jet(b, a); },
                          [&](const Quad& a, const Quad& b) { return te.quad(b, a); });
    for (double u : {-0.9, 0.3, 1.2})
        for (double v : {0.5, 2.0}) {
            const FundForms f = forms(te, u, v), g = forms(swapped, v, u);
            CHECK(g.B == doctest::Approx(f.B).epsilon(1e-10));
            CHECK(g.A == doctest::Approx(-f.A).epsilon(1e-10));
            CHECK(cmc1_residual(g) == doctest::Approx(cmc1_residual(f)).epsilon(1e-10).scale(1 + f.A * f.A));
        }
}

TEST_CASE("input validation") {
    const Surface e = zoo::surface(FamilyId(Kind::E));
    Domain unit;
    unit.u = {0, 1};
    const Surface box = Surface::from_generic("box", AmbientKind::R31, unit, [](auto u, auto v) {
        using T = decltype(u);
        return CoordsT<T>{T(0), u, v, T(0)};
    });
    CHECK_THROWS_AS(jet2(box, 2.0, 0.0), DomainError);
    CHECK_THROWS_AS(jet2(box, 0.0, 0.0, DiffSpec::central(1e-4)), DomainError);
    CHECK_NOTHROW(jet2(box, 0.0, 0.0));
    CHECK_THROWS_AS(jet2(plane(), 0.1, 0.2, DiffSpec::central(0)), DomainError);
    CHECK_THROWS_AS(fund_forms(jet2(e, 0.5, 0.5), AmbientKind::S31), DomainError);
}

TEST_CASE("singular scan locates published loci") {
    SUBCASE("TE: s = 0") {
        const Grid g{{-2, 2, 41, false}, {0, 2 * kPi, 32, true}};
        const auto r = singular_scan(zoo::surface(FamilyId(Kind::TE, 2)), g, 1e-12);
        REQUIRE_FALSE(r.points.empty());
        for (const auto& p : r.points) CHECK(std::abs(p.u) <= g.u.step() + 1e-12);
        for (const auto& c : r.cells) CHECK((c.u0 <= 1e-12 && c.u1 >= -1e-12));
        CHECK(r.points.size() == 32);  // the whole s = 0 row
    }
    SUBCASE("SH: theta = 0") {
        const Grid g{{-2, 2, 21, false}, {-2, 2, 41, false}};
        const auto r = singular_scan(zoo::surface(FamilyId(Kind::SH, 2)), g, 1e-12);
        REQUIRE_FALSE(r.cells.empty());
        for (const auto& c : r.cells) CHECK((c.v0 <= 1e-12 && c.v1 >= -1e-12));
    }
    SUBCASE("plane: empty") {
        const Grid g{{-1, 1, 10, false}, {-1, 1, 10, false}};
        const auto r = singular_scan(plane(), g, 1e-12);
        CHECK(r.points.empty());
        CHECK(r.cells.empty());
    }
}
