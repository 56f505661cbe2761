#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gcat/errors.hpp"
#include "gcat/lift.hpp"

using namespace gcat;
using namespace gcat::lift;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

ChartedMap graph_map() {
    ChartedMap f;
    f.label = "graph";
    f.domain = Box::whole(2);
    f.forward = [](const Vec& x) {
        Vec y(3);
        y << x[1] * std::tanh(x[0]), x[0], x[1];
        return y;
    };
    return f;
}

ChartedMap flat_exp() {
    ChartedMap f;
    f.label = "flat exp";
    f.domain = {{0.0}, {std::numeric_limits<double>::infinity()}, {true}, {false}};
    f.forward = [](const Vec& x) { return v2(x[0], std::exp(-1 / x[0])); };
    return f;
}

std::vector<std::pair<double, Vec>> tail_of(const std::function<double(int)>& s, int n) {
    std::vector<std::pair<double, Vec>> out;
    for (int k = 1; k <= n; ++k) out.emplace_back(1 - std::ldexp(1.0, -k), v1(s(k)));
    return out;
}

}  // namespace

TEST_CASE("box membership and distance") {
    const Box b{{0, -1}, {1, 1}, {true, false}, {false, false}};
    CHECK_FALSE(b.contains(v2(0, 0)));
    CHECK(b.contains(v2(1, 1)));
    CHECK(b.contains(v2(0.5, -1)));
    CHECK_FALSE(b.contains(v2(0.5, 1.5)));
    CHECK(b.distance_to_boundary(v2(0.25, 0.5)) == doctest::Approx(0.25));
    CHECK(std::isinf(Box::whole(3).distance_to_boundary(Vec::Zero(3))));
}

TEST_CASE("local inverse") {
    SUBCASE("exact preimage on the graph") {
        const ChartedMap f = graph_map();
        AnalyticCurve g{[](double t) {
                            Vec y(3);
                            y << std::tanh(t), t, 1;
                            return y;
                        },
                        {}, "diag"};
        const Vec s = local_lift(f, g, 0, v2(0, 1));
        CHECK(s[0] == doctest::Approx(0).epsilon(1e-12));
        CHECK(s[1] == doctest::Approx(1).epsilon(1e-12));
        const Vec s2 = local_lift(f, g, 0.6, v2(0.5, 1.1));
        CHECK(std::abs(s2[0] - 0.6) < 1e-10);
        CHECK(std::abs(s2[1] - 1) < 1e-10);
    }
    SUBCASE("flat exponential") {
        const ChartedMap f = flat_exp();
        const double x = 0.37;
        const Vec s = f.local_inverse(f.forward(v1(x)), v1(0.4));
        CHECK(std::abs(s[0] - x) < 1e-10);
    }
    SUBCASE("seed outside the basin") {
        ChartedMap circle;
        circle.label = "circle";
        circle.domain = Box::whole(1);
        circle.forward = [](const Vec& x) { return v2(std::cos(x[0]), std::sin(x[0])); };
        // antipodal seed: the Gauss-Newton step vanishes
        CHECK_THROWS_AS(circle.local_inverse(v2(1, 0), v1(std::numbers::pi)), NewtonFailure);
        // seed outside the domain
        CHECK_THROWS_AS(flat_exp().local_inverse(v2(0.5, std::exp(-2.0)), v1(-1)), NewtonFailure);
    }
}

TEST_CASE("fixtures") {
    SUBCASE("torus line lifts to [0,10]") {
        const Fixture fx = fixture("torus-line");
        const auto tr = continue_lift(fx.map, fx.curve, local_lift(fx.map, fx.curve, 0, fx.seed), 0);
        CHECK(tr.status == LiftStatus::Converged);
        CHECK(tr.last().t == 1.0);
        CHECK(std::abs(tr.last().sigma[0] - 10) < 1e-6);
        REQUIRE(tr.end);
        CHECK(tr.end->kind == EndTest::Kind::Converged);
        // along the way sigma(t) = 10 t
        for (const auto& s : tr.states) CHECK(std::abs(s.sigma[0] - 10 * s.t) < 1e-8);
    }
    SUBCASE("flat exponential escapes through its open end") {
        const Fixture fx = fixture("kok-crossing");
        const auto tr = continue_lift(fx.map, fx.curve, local_lift(fx.map, fx.curve, 0, fx.seed), 0);
        CHECK(tr.status == LiftStatus::BoundaryEscape);
        CHECK(std::abs(tr.last().sigma[0]) < 1e-4);
        CHECK(std::abs(tr.last().t - 0.5) < 1e-6);
        CHECK_FALSE(tr.budget_exhausted);
    }
    SUBCASE("graph segment") {
        const Fixture fx = fixture("k-graph-segment");
        const auto tr = continue_lift(fx.map, fx.curve, local_lift(fx.map, fx.curve, 0, fx.seed), 0);
        CHECK(tr.status == LiftStatus::Converged);
        CHECK(std::abs(tr.last().sigma[0] - 0.7) < 1e-9);
        CHECK(std::abs(tr.last().sigma[1] - 2) < 1e-9);
    }
    CHECK_THROWS_AS(fixture("nope"), DomainError);
}

TEST_CASE("lift does not depend on the step schedule") {
    const Fixture fx = fixture("torus-line");
    LiftOptions a, b;
    a.initial_step = 1.0 / 64;
    b.initial_step = 1.0 / 256;
    const auto A = continue_lift(fx.map, fx.curve, fx.seed, 0, a);
    const auto B = continue_lift(fx.map, fx.curve, fx.seed, 0, b);
    int shared = 0;
    for (const auto& s : A.states)
        if (auto o = B.at(s.t)) {
            ++shared;
            CHECK((s.sigma - *o).norm() < 1e-9);
        }
    CHECK(shared >= 64);
}

TEST_CASE("corrector budget") {
    const Fixture fx = fixture("torus-line");
    LiftOptions o;
    o.corrector_budget = 10;
    const auto tr = continue_lift(fx.map, fx.curve, fx.seed, 0, o);
    CHECK(tr.status == LiftStatus::NewtonFailure);
    CHECK(tr.budget_exhausted);
}

TEST_CASE("end-of-path test") {
    const auto conv = end_convergence(tail_of([](int k) { return 2 + 1.0 / (1e4 + k); }, 20));
    CHECK(conv.kind == EndTest::Kind::Converged);
    CHECK(std::abs(conv.limit[0] - 2) < 1e-3);

    const auto osc = end_convergence(tail_of([](int k) { return double(k % 2); }, 20));
    REQUIRE(osc.kind == EndTest::Kind::Oscillating);
    REQUIRE(osc.accumulation.size() == 2);
    CHECK(osc.accumulation[0][0] == 0);
    CHECK(osc.accumulation[1][0] == 1);

    CHECK(end_convergence(tail_of([](int k) { return double(k); }, 20)).kind == EndTest::Kind::Diverging);
    CHECK_THROWS_AS(end_convergence(tail_of([](int k) { return double(k); }, 5)), InsufficientSamples);
}

TEST_CASE("limit recovery through a periodic map") {
    auto f = [](double x) { return std::cos(x); };
    std::vector<double> phi;
    for (int j = 11; j <= 24; ++j) phi.push_back(2 + std::ldexp(1.0, -j));
    CHECK(std::abs(recover_limit_periodic(f, phi, 1e-3) - 2) < 1e-6);

    const std::vector<double> one_two{1, 2, 1, 2, 1, 2};
    CHECK_THROWS_AS(recover_limit_periodic(f, one_two, 1e-3), PreconditionViolation);

    const std::vector<double> pm{1, -1, 1, -1, 1, -1};
    try {
        recover_limit_periodic(f, pm, 1e-3);
        FAIL("expected MultipleAccumulationPoints");
    } catch (const MultipleAccumulationPoints& e) {
        CHECK(e.clusters == std::vector<double>{-1, 1});
    }
    const std::vector<double> unbounded{1, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(recover_limit_periodic(f, unbounded, 1e-3), PreconditionViolation);
}

TEST_CASE("trace json") {
    const Fixture fx = fixture("k-graph-segment");
    const auto tr = continue_lift(fx.map, fx.curve, fx.seed, 0);
    const auto j = to_json(tr, fx.name);
    CHECK(j["fixture"] == "k-graph-segment");
    CHECK(j["status"] == "Converged");
    CHECK(j["trace"].size() == tr.states.size());
    CHECK(j["trace"].back()["status"] == "Converged");
}
