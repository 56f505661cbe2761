#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gcat/errors.hpp"
#include "gcat/lorentz.hpp"
#include "gcat/zoo.hpp"

using namespace gcat;
using namespace gcat::zoo;

namespace {

constexpr double kPi = std::numbers::pi;

double ds_residual(const Coords& c) { return -c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3] - 1; }
double norm2(const Coords& c) { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]; }

std::vector<FamilyId> pinned() {
    return {FamilyId(Kind::TE, 2), FamilyId(Kind::TE, 0.5), FamilyId(Kind::TP), FamilyId(Kind::TH, 2),
            FamilyId(Kind::TH, 0.5), FamilyId(Kind::SE, 2), FamilyId(Kind::SE, 0.5), FamilyId(Kind::SH, 2),
            FamilyId(Kind::SH, 0.5), FamilyId(Kind::SP), FamilyId(Kind::LH), FamilyId(Kind::LE)};
}

}  // namespace

TEST_CASE("registry") {
    const auto& ks = all_kinds();
    REQUIRE(ks.size() == 12);
    const char* keys[] = {"k", "e", "p", "h", "te", "tp", "th", "se", "sh", "sp", "lh", "le"};
    for (std::size_t i = 0; i < ks.size(); ++i) {
        CHECK(key(ks[i]) == keys[i]);
        CHECK(kind_from_key(keys[i]) == ks[i]);
    }
    CHECK_FALSE(kind_from_key("xx"));
    CHECK(ambient(Kind::K) == AmbientKind::R31);
    CHECK(ambient(Kind::SP) == AmbientKind::S31);
    CHECK_THROWS_AS(parse_family("xx", 2.0, 2.0), UnknownFamily);
    CHECK_THROWS_AS(parse_family("te", std::nullopt, std::nullopt), DomainError);
    CHECK(parse_family("th", std::nullopt, 0.5).label() == "th(nu=0.5)");
    CHECK(parse_family("se", 2.0, std::nullopt).label() == "se(mu=2)");
    CHECK(parse_family("k", 7.0, 7.0).label() == "k");
}

TEST_CASE("parameter ranges") {
    CHECK_THROWS_AS(FamilyId(Kind::TE, 1), DomainError);
    CHECK_THROWS_AS(FamilyId(Kind::TE, -2), DomainError);
    CHECK_THROWS_AS(FamilyId(Kind::TH, 1), DomainError);
    CHECK_THROWS_AS(FamilyId(Kind::TH, 0), DomainError);
    CHECK_THROWS_AS(FamilyId(Kind::SE, 0), DomainError);
    CHECK_THROWS_AS(FamilyId(Kind::SE, -1), DomainError);
    CHECK_THROWS_AS(FamilyId(Kind::SH, 0), DomainError);
    CHECK_THROWS_AS(FamilyId(Kind::SE, std::nan("")), DomainError);
    CHECK_NOTHROW(FamilyId(Kind::SE, -2));
    CHECK_NOTHROW(FamilyId(Kind::SH, 1));
}

TEST_CASE("special points of the families") {
    CHECK(eval_surface(FamilyId(Kind::K), 0, 0) == Coords{0, 0, 1, 0});
    for (double th : {0.0, 0.3, 1.0, 2.5, 4.0, 6.0})
        CHECK(eval_surface(FamilyId(Kind::TE, 2), 0, th) == Coords{0, 0, 0, 1});
    const Coords sh = eval_surface(FamilyId(Kind::SH, 2), 0, 0);
    CHECK(sh[0] == 0);
    CHECK(sh[1] == 0);
    CHECK(sh[2] == -1);
    CHECK(sh[3] == 0);
    CHECK(eval_surface(FamilyId(Kind::SP), 0, 2)[0] == -1);
    CHECK(eval_surface(FamilyId(Kind::SP), 0, 2)[3] == 0);
}

TEST_CASE("TH collapse points carry the opposite sign to the printed closed form") {
    for (double nu : {2.0, 0.5})
        for (int k = -2; k <= 2; ++k) {
            const double s = kPi / 2 + k * kPi, a = (0.5 + k) * kPi / nu;
            const double sgn_printed = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k+1)
            const Coords printed{sgn_printed * std::sinh(a), 0, 0, sgn_printed * std::cosh(a)};
            const Coords got = eval_surface(FamilyId(Kind::TH, nu), s, 0.7);
            const double scale = 1 + std::cosh(a);
            CHECK(std::abs(got[0] + printed[0]) < 1e-12 * scale);
            CHECK(std::abs(got[3] + printed[3]) < 1e-12 * scale);
            CHECK(std::abs(got[1]) < 1e-12 * scale);
        }
}

TEST_CASE("S31 families lie on de Sitter space") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> S(-2, 2), A(0, 2 * kPi);
    for (const auto& id : pinned())
        for (int n = 0; n < 100; ++n) {
            const Coords c = eval_surface(id, S(rng), A(rng));
            CHECK(std::abs(ds_residual(c)) < 1e-13 * std::max(1.0, norm2(c)));
        }
}

TEST_CASE("implicit companions") {
    CHECK(std::abs(implicit_residual(Implicit::H, {0, kPi, 0, 0})) < 1e-15);
    CHECK(implicit_residual(Implicit::E, {0, 0, 0, 0}) == 0);
    CHECK(std::abs(implicit_residual(Implicit::P, eval_surface(FamilyId(Kind::P), 0.3, -0.7))) < 1e-10);
    CHECK(std::abs(implicit_residual(Implicit::E, eval_surface(FamilyId(Kind::E), 0.8, 2.0))) < 1e-12);
    CHECK(std::abs(implicit_residual(Implicit::KGraph, {0.5 * std::tanh(0.3), 0.3, 0.5, 0})) < 1e-16);
    CHECK(std::abs(implicit_residual(Implicit::E, {0.5, 0.1, 0.1, 0})) > 0.1);
    CHECK(implicit_of(Kind::K) == Implicit::KGraph);
    CHECK(implicit_of(Kind::LE) == Implicit::LEGraph);
    CHECK_FALSE(implicit_of(Kind::SE));
}

TEST_CASE("extension coordinates") {
    const XPoint sp = xi_eta(FamilyId(Kind::SP), 0, 2);
    CHECK(sp.x[0] == doctest::Approx(-1));
    CHECK(sp.x[1] == doctest::Approx(-1));
    CHECK(sp.x[0] * sp.x[1] == doctest::Approx(1));

    const XPoint se = xi_eta(FamilyId(Kind::SE, 2), 0, 0);
    CHECK(se.x[0] == doctest::Approx(-0.75));
    CHECK(se.x[1] == doctest::Approx(-0.75));
    CHECK(se.x[0] * se.x[1] == doctest::Approx(9.0 / 16));

    const FamilyId lh(Kind::LH);
    const XPoint l = xi_eta(lh, 0, kPi / 2);
    CHECK(std::abs(l.x[1]) < 1e-15);
    const Coords c = eval_extension(lh, l);
    CHECK(std::abs(c[0] - c[3]) < 1e-15);
}

TEST_CASE("extension surfaces and factorization") {
    for (double xi : {-3.0, 0.0, 0.5, 4.0}) {
        const Coords c = eval_extension(FamilyId(Kind::SH, 2), make_xpoint(FamilyId(Kind::SH, 2), {xi, 0, 0}));
        CHECK(c[0] == doctest::Approx(xi / 2));
        CHECK(c[1] == doctest::Approx(0));
        CHECK(c[2] == doctest::Approx(-1));
        CHECK(c[3] == doctest::Approx(xi / 2));
    }
    const Coords sp = eval_extension(FamilyId(Kind::SP), make_xpoint(FamilyId(Kind::SP), {0, 0, 0}));
    CHECK(sp == Coords{0, 0, 1, 0});

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> S(-2, 2), A(0.05, 6.2);
    for (const auto& id : pinned()) {
        for (int n = 0; n < 50; ++n) {
            const double s = S(rng), th = A(rng);
            const Coords f = eval_surface(id, s, th), g = eval_extension(id, xi_eta(id, s, th));
            for (int i = 0; i < 4; ++i) CHECK(std::abs(f[i] - g[i]) < 1e-12 * std::max(1.0, std::sqrt(norm2(f))));
        }
    }
    const FamilyId se(Kind::SE, 2);
    const Coords a = eval_surface(se, 1.3, 0.4), b = eval_extension(se, xi_eta(se, 1.3, 0.4));
    for (int i = 0; i < 4; ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12));
    CHECK_THROWS_AS(eval_extension(FamilyId(Kind::SP), make_xpoint(FamilyId(Kind::SP), {1, 1, 0})), ResidualViolation);
}

TEST_CASE("reflection") {
    const FamilyId sp(Kind::SP);
    const Coords f = eval_surface(sp, 0, 2), r = reflected_surface(sp, 0, 2);
    CHECK(r[0] == 1);
    CHECK(r[1] == f[1]);
    CHECK(r[2] == f[2]);
    CHECK(r[3] == 0);
    CHECK(reflect({1, 2, 3, 4}) == Coords{-1, 2, 3, -4});
    CHECK_THROWS_AS(reflected_surface(FamilyId(Kind::TE, 2), 0, 0), DomainError);
}

TEST_CASE("limit sets") {
    for (const auto& c : limit_set_sample(FamilyId(Kind::SP), 3)) {
        CHECK(c[1] == doctest::Approx(0));
        CHECK(c[2] == doctest::Approx(1));
        CHECK(std::abs(c[0]) == doctest::Approx(std::abs(c[3])));
    }
    const auto le = limit_set_sample(FamilyId(Kind::LE), 3);
    CHECK(le.size() == 3);
    for (const auto& c : le) {
        CHECK(c[0] == doctest::Approx(c[3]));
        CHECK(c[1] == doctest::Approx(0));
        CHECK(c[2] == doctest::Approx(1));
    }
    CHECK_THROWS_AS(limit_lines(FamilyId(Kind::E)), EmptyLimitSet);
    CHECK(limit_lines(FamilyId(Kind::LH)).size() == 2);
    for (const auto& id : pinned()) {
        if (!has_limit_set(id.kind())) continue;
        for (const auto& L : limit_lines(id)) {
            const lorentz::LVec4 d(L.dir), b(L.base);
            CHECK(std::abs(lorentz::inner4(d, d)) < 1e-12 * std::max(1.0, norm2(L.dir)));
            CHECK(std::abs(lorentz::inner4(b, b) - 1) < 1e-12 * std::max(1.0, norm2(L.base)));
            CHECK(std::abs(lorentz::inner4(b, d)) < 1e-12 * std::max(1.0, norm2(L.base)));
        }
    }
}

TEST_CASE("profile regularity") {
    const Regularity te = profile_regularity_residual(FamilyId(Kind::TE, 2), 0);
    CHECK(te.identity_residual < 1e-10);
    CHECK(te.speed > 0);
    const Regularity sh = profile_regularity_residual(FamilyId(Kind::SH, 2), 0);
    CHECK(sh.identity_residual < 1e-10);
    CHECK(sh.speed == doctest::Approx((4.0 + 1) / 4 * 2));
    const Regularity tp = profile_regularity_residual(FamilyId(Kind::TP), 0);
    CHECK(tp.identity_residual < 1e-10);
    CHECK(tp.speed > 0);
    CHECK_THROWS_AS(profile_regularity_residual(FamilyId(Kind::SP), 0), DomainError);
}

TEST_CASE("printed TE derivative identity is off by the factor mu") {
    // derivative of the profile by central differences on the closed form
    const double mu = 2, s = 0, h = 1e-5;
    auto x0x3 = [&](double t) {
        const Coords c = eval_surface(FamilyId(Kind::TE, mu), t, 0);
        return std::array<double, 2>{c[0], c[3]};
    };
    const auto p = x0x3(s + h), m = x0x3(s - h);
    const double d0 = (p[0] - m[0]) / (2 * h), d3 = (p[1] - m[1]) / (2 * h);
    const double c = (mu * mu - 1) / (2 * mu), a = -mu * std::cosh(mu * s), b = std::sinh(mu * s);
    // corrected identity
    CHECK(std::abs(d0 - c * (std::cosh(s) * a + std::sinh(s) * b)) < 1e-8);
    CHECK(std::abs(d3 - c * (std::sinh(s) * a + std::cosh(s) * b)) < 1e-8);
    // as printed, first column scaled by mu
    const double q0 = c * (mu * std::cosh(s) * a + std::sinh(s) * b);
    const double q3 = c * (mu * std::sinh(s) * a + std::cosh(s) * b);
    CHECK(std::hypot(d0 - q0, d3 - q3) > 1.0);
}

TEST_CASE("singular components collapse to their published images") {
    for (const auto& id : pinned()) {
        for (const auto& comp : singular_components(id)) {
            if (!comp.image) continue;
            for (double t : {comp.lo, 0.5 * (comp.lo + comp.hi), comp.hi}) {
                const Coords c = comp.fixed_axis == 0 ? eval_surface(id, comp.value, t) : eval_surface(id, t, comp.value);
                const double tol = comp.relative ? 1e-12 * (1 + std::sqrt(norm2(*comp.image))) : 1e-12;
                for (int i = 0; i < 4; ++i) CHECK(std::abs(c[i] - (*comp.image)[i]) <= tol);
            }
        }
    }
    const auto te = singular_components(FamilyId(Kind::TE, 2));
    REQUIRE(te.size() == 1);
    CHECK(*te[0].image == Coords{0, 0, 0, 1});
    CHECK(*singular_components(FamilyId(Kind::SP))[0].image == Coords{0, 0, 1, 0});
}

TEST_CASE("cone points are zeros of their defining functions") {
    for (Kind k : {Kind::E, Kind::P, Kind::H, Kind::SE, Kind::SH, Kind::SP, Kind::LH, Kind::LE}) {
        const FamilyId id(k, k == Kind::SE || k == Kind::SH ? 2.0 : 0.0);
        const auto pts = dc_points(id);
        REQUIRE_FALSE(pts.empty());
        for (const auto& p : pts) CHECK(std::abs(defining_function<double>(id, p.p)) < 1e-12);
    }
}
