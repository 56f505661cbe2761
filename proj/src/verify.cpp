#include "gcat/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "gcat/errors.hpp"

namespace gcat::verify {

namespace {

using zoo::FamilyId;
using zoo::Kind;
namespace fm = zoo::formulas;
constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

// Collects per-sample residuals into a report.
class Collector {
public:
    Collector(std::string family, std::string suite, std::array<int, 2> grid, double tol) : t0_(Clock::now()) {
        r_.family = std::move(family);
        r_.suite = std::move(suite);
        r_.grid = grid;
        r_.tolerance = tol;
    }

    // Records a residual; it fails when above tolerance (or when `fail` forces it).
    void add(double residual, std::vector<double> params, bool fail = false) {
        ++r_.samples;
        if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
        r_.max_residual = std::max(r_.max_residual, residual);
        if (fail || residual > r_.tolerance) {
            ++r_.failure_count;
            if (r_.failures.size() < kMaxStoredFailures) r_.failures.push_back({std::move(params), residual});
        }
    }

    void fail_without_sample(double residual, std::vector<double> params) {
        ++r_.failure_count;
        r_.max_residual = std::max(r_.max_residual, residual);
        if (r_.failures.size() < kMaxStoredFailures) r_.failures.push_back({std::move(params), residual});
    }

    void metric(const std::string& k, double v) { r_.metrics[k] = v; }

    VerificationReport finish() {
        r_.wall_time_s = std::chrono::duration<double>(Clock::now() - t0_).count();
        return std::move(r_);
    }

private:
    VerificationReport r_;
    Clock::time_point t0_;
};

template <class T>
T euclid_dist(const CoordsT<T>& a, const CoordsT<T>& b) {
    using std::sqrt;
    T s(0);
    for (int k = 0; k < 4; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return sqrt(s);
}

double dist3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

double quad_abs(const Quad& q) { return std::abs(to_double(q)); }

template <class F>
void for_grid(const Grid& g, F&& f) {
    for (int i = 0; i < g.u.n; ++i)
        for (int j = 0; j < g.v.n; ++j) f(g.u.at(i), g.v.at(j));
}

std::array<int, 2> dims(const Grid& g) { return {g.u.n, g.v.n}; }

void require_extension_kind(const FamilyId& id, bool ok, const char* suite) {
    if (!ok) throw DomainError(std::string(suite) + ": not applicable to " + id.label());
}

// Low-discrepancy fractional sequence (additive recurrence).
double frac_seq(int i, double alpha) {
    const double x = 0.5 + (i + 1) * alpha;
    return x - std::floor(x);
}

}  // namespace

nlohmann::ordered_json to_json(const VerificationReport& r, bool with_time) {
    nlohmann::ordered_json j;
    j["family"] = r.family;
    j["suite"] = r.suite;
    j["grid"] = {r.grid[0], r.grid[1]};
    j["max_residual"] = r.max_residual;
    auto fails = nlohmann::ordered_json::array();
    for (const auto& f : r.failures) {
        nlohmann::ordered_json e;
        e["params"] = f.params;
        e["residual"] = f.residual;
        fails.push_back(e);
    }
    j["failures"] = fails;
    j["failure_count"] = r.failure_count;
    j["tolerance"] = r.tolerance;
    j["samples"] = r.samples;
    j["passed"] = r.passed();
    if (!r.metrics.empty()) {
        nlohmann::ordered_json m;
        for (const auto& [k, v] : r.metrics) m[k] = v;
        j["metrics"] = m;
    }
    if (with_time) j["wall_time_s"] = r.wall_time_s;
    return j;
}

// ---- membership

VerificationReport membership_suite(const Surface& s, const std::string& label, std::optional<zoo::Implicit> implicit,
                                    const Grid& grid, double tol) {
    if (s.kind() == AmbientKind::R31 && !implicit)
        throw DomainError("membership_suite: R31 surface needs an implicit companion");
    Collector c(label, "membership", dims(grid), tol);
    for_grid(grid, [&](double u, double v) {
        const auto q = s.quad(Quad(u), Quad(v));
        double r;
        if (s.kind() == AmbientKind::S31)
            r = quad_abs(-q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3] - 1);
        else
            r = quad_abs(zoo::implicit_residual_quad(*implicit, q));
        c.add(r, {u, v});
    });
    return c.finish();
}

VerificationReport membership_suite(const FamilyId& id, const Grid& grid, double tol) {
    const Kind k = id.kind();
    const auto impl = zoo::ambient(k) == AmbientKind::R31 ? zoo::implicit_of(k) : std::nullopt;
    return membership_suite(zoo::surface(id), id.label(), impl, grid, tol);
}

VerificationReport implicit_suite(zoo::Implicit which, const Grid& grid, double tol) {
    std::string label;
    std::function<CoordsT<Quad>(const Quad&, const Quad&)> f;
    switch (which) {
        case zoo::Implicit::E:
            label = "e";
            f = [](const Quad& u, const Quad& v) { return fm::f_E(u, v); };
            break;
        case zoo::Implicit::P:
            label = "p";
            f = [](const Quad& u, const Quad& v) { return fm::f_P(u, v); };
            break;
        case zoo::Implicit::H:
            label = "h";
            f = [](const Quad& u, const Quad& v) { return fm::f_H(u, v); };
            break;
        case zoo::Implicit::KGraph:
            label = "k";
            f = [](const Quad& u, const Quad& s) { return fm::k_graph_g(u, s); };
            break;
        case zoo::Implicit::LEGraph:
            label = "le";
            f = [](const Quad& u, const Quad& v) { return fm::f_LE(u, v); };
            break;
    }
    Collector c(label, std::string("implicit:") + zoo::to_string(which), dims(grid), tol);
    for_grid(grid, [&](double u, double v) {
        c.add(quad_abs(zoo::implicit_residual_quad(which, f(Quad(u), Quad(v)))), {u, v});
    });
    return c.finish();
}

// ---- curvature

VerificationReport cmc_suite(const FamilyId& id, int n, std::uint64_t seed, double tol, curvature::DiffSpec how) {
    const bool s31 = zoo::ambient(id.kind()) == AmbientKind::S31;
    Collector c(id.label(), s31 ? "cmc1" : "zmc", {n, 1}, tol);
    const Surface surf = zoo::surface(id);
    const Grid box = zoo::default_grid(id.kind(), 2, 2);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(box.u.lo, box.u.hi), V(box.v.lo, box.v.hi);
    int skipped = 0;
    for (int i = 0; i < n;) {
        const double u = U(rng), v = V(rng);
        const auto ff = curvature::fund_forms(curvature::jet2(surf, u, v, how));
        if (std::abs(ff.B) <= curvature::kLightlikeTol) {
            ++skipped;
            continue;
        }
        c.add(s31 ? curvature::cmc1_relative(ff) : std::abs(curvature::zmc_residual(ff)), {u, v});
        ++i;
    }
    c.metric("skipped_nonregular", skipped);
    return c.finish();
}

// ---- extension surfaces

VerificationReport factorization_suite(const FamilyId& id, const Grid& grid, double tol) {
    require_extension_kind(id, zoo::has_extension(id.kind()), "factorization");
    const Kind k = id.kind();
    const double p = id.param();
    Collector c(id.label(), "factorization", dims(grid), tol);
    double worst_x = 0;
    for_grid(grid, [&](double s, double th) {
        const Quad qs(s), qt(th);
        const auto X = fm::to_x<Quad>(k, p, qs, qt);
        const auto lhs = fm::embed<Quad>(k, p, X);
        const auto rhs = fm::eval<Quad>(k, p, qs, qt);
        const double d = to_double(euclid_dist(lhs, rhs));
        const double rx = quad_abs(fm::x_residual<Quad>(k, p, X));
        worst_x = std::max(worst_x, rx);
        c.add(std::max(d, rx), {s, th});
    });
    c.metric("max_x_residual", worst_x);
    return c.finish();
}

VerificationReport reflection_suite(const FamilyId& id, const Grid& grid, double tol) {
    require_extension_kind(id, fm::is_s_type(id.kind()), "reflection");
    const Kind k = id.kind();
    const double p = id.param();
    Collector c(id.label(), "reflection", dims(grid), tol);
    std::size_t inexact = 0;
    for_grid(grid, [&](double s, double th) {
        // bitwise congruence of the reflected map in double
        const Coords f = zoo::eval_surface(id, s, th);
        const Coords fr = zoo::reflected_surface(id, s, th);
        const bool exact = fr[0] == -f[0] && fr[1] == f[1] && fr[2] == f[2] && fr[3] == -f[3];
        if (!exact) ++inexact;
        // the reflected image is f~ at (-xi, -eta, theta) and stays on X and S31
        const Quad qs(s), qt(th);
        auto X = fm::to_x<Quad>(k, p, qs, qt);
        X[0] = -X[0];
        X[1] = -X[1];
        const auto fq = fm::eval<Quad>(k, p, qs, qt);
        const CoordsT<Quad> rq{-fq[0], fq[1], fq[2], -fq[3]};
        const double d = to_double(euclid_dist(fm::embed<Quad>(k, p, X), rq));
        const double rx = quad_abs(fm::x_residual<Quad>(k, p, X));
        const double ds = quad_abs(-rq[0] * rq[0] + rq[1] * rq[1] + rq[2] * rq[2] + rq[3] * rq[3] - 1);
        c.add(std::max({d, rx, ds}), {s, th}, !exact);
    });
    c.metric("inexact_reflections", double(inexact));
    return c.finish();
}

VerificationReport collapse_suite(const FamilyId& id, int n, double tol) {
    const auto comps = zoo::singular_components(id);
    Collector c(id.label(), "collapse", {int(comps.size()), n}, tol);
    int ci = 0;
    for (const auto& comp : comps) {
        if (!comp.image) {
            ++ci;
            continue;
        }
        const bool angular = (comp.hi - comp.lo) == 2 * kPi;
        const GridAxis ax{comp.lo, comp.hi, n, angular};
        std::vector<Coords> img;
        img.reserve(n);
        for (int i = 0; i < n; ++i) {
            const double w = ax.at(i);
            img.push_back(comp.fixed_axis == 0 ? zoo::eval_surface(id, comp.value, w) : zoo::eval_surface(id, w, comp.value));
        }
        double diam = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) diam = std::max(diam, euclid_dist(img[i], img[j]));
        double scale = 1;
        if (comp.relative)
            for (double x : *comp.image) scale += std::abs(x);
        for (int i = 0; i < n; ++i) {
            const double d = euclid_dist(img[i], *comp.image) / scale;
            // exact components must hit the point bit for bit
            const bool fail = comp.exact ? d != 0.0 : false;
            c.add(std::max(d, diam), {double(ci), ax.at(i)}, fail);
        }
        c.metric("diameter_" + comp.label, diam);
        ++ci;
    }
    return c.finish();
}

VerificationReport regularity_suite(const FamilyId& id, int n, double tol, double min_speed) {
    require_extension_kind(id, zoo::has_regularity_identity(id.kind()), "regularity");
    Collector c(id.label(), "regularity", {n, 1}, tol);
    const GridAxis ax{-3, 3, n, false};
    double slowest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double s = ax.at(i);
        const auto r = zoo::profile_regularity_residual(id, s);
        slowest = std::min(slowest, r.speed);
        c.add(r.identity_residual, {s}, !(r.speed > min_speed));
    }
    c.metric("min_speed", slowest);
    return c.finish();
}

// ---- cone points

ConePointReport cone_point_check(const FamilyId& id, const zoo::DCPoint& dc, double h) {
    if (!(h > 0)) throw DomainError("cone_point_check: h must be > 0");
    ConePointReport rep;
    rep.label = dc.label;
    rep.point = dc.p;
    // exact gradient: jets over coordinate pairs (0,1) and (1,2)
    using D = Dual2<double>;
    {
        const std::array<D, 3> q{D::var_u(dc.p[0]), D::var_v(dc.p[1]), D(dc.p[2])};
        const D F = zoo::defining_function<D>(id, q);
        rep.gradient[0] = F.u;
        rep.gradient[1] = F.v;
    }
    {
        const std::array<D, 3> q{D(dc.p[0]), D(dc.p[1]), D::var_v(dc.p[2])};
        rep.gradient[2] = zoo::defining_function<D>(id, q).v;
    }
    rep.gradient_norm = std::sqrt(rep.gradient[0] * rep.gradient[0] + rep.gradient[1] * rep.gradient[1] +
                                  rep.gradient[2] * rep.gradient[2]);
    if (!(rep.gradient_norm < 1e-8))
        throw ResidualViolation("cone_point_check: gradient does not vanish at " + id.label() + " " + dc.label,
                                rep.gradient_norm);

    auto F = [&](std::array<double, 3> x) { return zoo::defining_function<double>(id, x); };
    Eigen::Matrix3d Hm;
    const double f0 = F(dc.p);
    for (int a = 0; a < 3; ++a) {
        auto xp = dc.p, xm = dc.p;
        xp[a] += h;
        xm[a] -= h;
        Hm(a, a) = (F(xp) - 2 * f0 + F(xm)) / (h * h);
        for (int b = a + 1; b < 3; ++b) {
            auto pp = dc.p, pm = dc.p, mp = dc.p, mm = dc.p;
            pp[a] += h, pp[b] += h;
            pm[a] += h, pm[b] -= h;
            mp[a] -= h, mp[b] += h;
            mm[a] -= h, mm[b] -= h;
            Hm(a, b) = Hm(b, a) = (F(pp) - F(pm) - F(mp) + F(mm)) / (4 * h * h);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(Hm, Eigen::EigenvaluesOnly);
    const Eigen::Vector3d ev = es.eigenvalues();
    const double big = ev.cwiseAbs().maxCoeff();
    for (int a = 0; a < 3; ++a) {
        rep.eigenvalues[a] = ev[a];
        if (std::abs(ev[a]) <= 1e-6 * big)
            ++rep.zero;
        else if (ev[a] > 0)
            ++rep.positive;
        else
            ++rep.negative;
    }
    rep.signature_ok = big > 0 && rep.zero == 0 && ((rep.positive == 2 && rep.negative == 1) || (rep.positive == 1 && rep.negative == 2));
    return rep;
}

VerificationReport cone_suite(const FamilyId& id, double h) {
    const auto pts = zoo::dc_points(id);
    Collector c(id.label(), "cone", {int(pts.size()), 1}, 1e-8);
    int idx = 0;
    int bad_signature = 0;
    for (const auto& p : pts) {
        try {
            const auto r = cone_point_check(id, p, h);
            if (!r.signature_ok) ++bad_signature;
            c.add(r.gradient_norm, {p.p[0], p.p[1], p.p[2]}, !r.signature_ok);
        } catch (const ResidualViolation& e) {
            c.add(e.residual, {p.p[0], p.p[1], p.p[2]}, true);
        }
        ++idx;
    }
    c.metric("bad_signatures", bad_signature);
    c.metric("dc_points", idx);
    return c.finish();
}

// ---- decomposition

const char* to_string(XClass c) {
    switch (c) {
        case XClass::FImage: return "f-image";
        case XClass::FCheckImage: return "f-check-image";
        case XClass::LimitSet: return "limit-set";
    }
    return "?";
}

XClassification classify_x_point(const FamilyId& id, const zoo::XPoint& p, double tol) {
    const Kind k = id.kind();
    if (!(fm::is_s_type(k) || fm::is_l_type(k)))
        throw DomainError("classify_x_point: " + id.label() + " has no image decomposition");
    const auto& X = p.x;
    const double r = zoo::x_residual(id, X);
    if (std::abs(r) > tol * std::max(1.0, zoo::x_residual_scale(id, X)))
        throw ResidualViolation("classify_x_point: point is off the extension surface", r);
    const double bound = tol * (1 + std::abs(X[0]) + std::abs(X[1]));
    XClassification out;
    if (fm::is_s_type(k)) {
        const double g = fm::s_profile<double>(k, id.param(), X[2]).g0;
        if (std::abs(g) <= bound) {
            out.tag = XClass::LimitSet;
            const bool xi_branch = std::abs(X[1]) <= std::abs(X[0]);
            out.witness = {xi_branch ? X[0] / 2 : X[1] / 2, X[2]};
            out.line = xi_branch ? +1 : -1;
            return out;
        }
        if (!(X[0] * X[1] > 0)) throw UnrecoverableWitness("classify_x_point: xi and eta do not share a sign");
        out.tag = (std::signbit(X[0]) == std::signbit(g)) ? XClass::FImage : XClass::FCheckImage;
        out.witness = {0.5 * std::log(X[0] / X[1]), X[2]};
        return out;
    }
    const double carrier = k == Kind::LH ? std::sin(2 * X[2]) : std::sinh(2 * X[2]);
    if (std::abs(carrier) <= bound) {
        out.tag = XClass::LimitSet;
        out.witness = {X[0] / 2, X[2]};
        out.line = k == Kind::LH ? (std::cos(2 * X[2]) > 0 ? +1 : -1) : 0;
        return out;
    }
    out.tag = XClass::FImage;
    out.witness = {k == Kind::LH ? X[1] / carrier : -X[1] / carrier, X[2]};
    return out;
}

std::array<double, 3> witness_point(const FamilyId& id, const XClassification& c, const zoo::XPoint& p) {
    const Kind k = id.kind();
    switch (c.tag) {
        case XClass::FImage: return fm::to_x<double>(k, id.param(), c.witness[0], c.witness[1]);
        case XClass::FCheckImage: {
            auto X = fm::to_x<double>(k, id.param(), c.witness[0], c.witness[1]);
            return {-X[0], -X[1], X[2]};
        }
        case XClass::LimitSet:
            if (fm::is_s_type(k)) return c.line > 0 ? std::array<double, 3>{2 * c.witness[0], 0, c.witness[1]}
                                                   : std::array<double, 3>{0, 2 * c.witness[0], c.witness[1]};
            return {2 * c.witness[0], 0, c.witness[1]};
    }
    return p.x;
}

VerificationReport decomposition_suite(const FamilyId& id, int n, double tol) {
    const Kind k = id.kind();
    require_extension_kind(id, fm::is_s_type(k) || fm::is_l_type(k), "decomposition");
    Collector c(id.label(), "decomposition", {n, 1}, tol);
    const double p = id.param();
    const auto lines = zoo::limit_lines(id);
    const bool s_type = fm::is_s_type(k);
    const int n_limit = std::max(int(lines.size()), n / 5);
    const int n_check = s_type ? (n - n_limit) / 2 : 0;
    const int n_image = n - n_limit - n_check;

    std::map<std::string, int> counts;
    std::map<int, int> line_hits;
    double worst_trip = 0;
    auto run = [&](const std::array<double, 3>& X, XClass expected, std::vector<double> params) {
        const auto xp = zoo::make_xpoint(id, X);
        try {
            const auto cl = classify_x_point(id, xp, tol);
            ++counts[to_string(cl.tag)];
            if (cl.tag == XClass::LimitSet) ++line_hits[cl.line];
            const double trip = dist3(witness_point(id, cl, xp), X);
            worst_trip = std::max(worst_trip, trip);
            c.add(trip, std::move(params), cl.tag != expected || trip > 10 * tol);
        } catch (const Error&) {
            c.add(std::numeric_limits<double>::infinity(), std::move(params), true);
        }
    };
    const double golden = 0.6180339887498949, silver = 0.4142135623730951;
    for (int i = 0; i < n_image + n_check; ++i) {
        const double s = -2.5 + 5.0 * frac_seq(i, golden);
        const double th = -3.0 + 6.0 * frac_seq(i, silver);
        auto X = fm::to_x<double>(k, p, s, th);
        if (i < n_image) {
            run(X, XClass::FImage, {0, s, th});
        } else {
            X[0] = -X[0];
            X[1] = -X[1];
            run(X, XClass::FCheckImage, {1, s, th});
        }
    }
    for (int i = 0; i < n_limit; ++i) {
        const auto& L = lines[i % lines.size()];
        const double t = -2.0 + 4.0 * frac_seq(i, golden);
        std::array<double, 3> X{};
        for (int a = 0; a < 3; ++a) X[a] = L.x_base[a] + t * L.x_dir[a];
        run(X, XClass::LimitSet, {2, double(i % lines.size()), t});
    }
    // every published stratum must be realized
    const std::vector<XClass> expected = s_type ? std::vector<XClass>{XClass::FImage, XClass::FCheckImage, XClass::LimitSet}
                                                : std::vector<XClass>{XClass::FImage, XClass::LimitSet};
    for (XClass e : expected)
        if (counts[to_string(e)] == 0) c.fail_without_sample(1.0, {double(int(e))});
    if (k == Kind::LH && (line_hits[+1] == 0 || line_hits[-1] == 0)) c.fail_without_sample(1.0, {3});
    for (XClass e : expected) c.metric(std::string("count_") + to_string(e), counts[to_string(e)]);
    if (k == Kind::LH) {
        c.metric("count_L+", line_hits[+1]);
        c.metric("count_L-", line_hits[-1]);
    }
    c.metric("max_round_trip", worst_trip);
    return c.finish();
}

// ---- dispatch

std::vector<std::string> all_suite_names() {
    return {"membership", "cmc", "implicit", "factorization", "reflection", "collapse", "regularity", "cone", "decomposition"};
}

std::vector<std::string> suites_for(Kind k) {
    std::vector<std::string> out{"membership", "cmc"};
    if (zoo::implicit_of(k)) out.push_back("implicit");
    if (zoo::has_extension(k)) out.push_back("factorization");
    if (fm::is_s_type(k)) out.push_back("reflection");
    if (k != Kind::K) out.push_back("collapse");
    if (zoo::has_regularity_identity(k)) out.push_back("regularity");
    if (k != Kind::K) out.push_back("cone");
    if (fm::is_s_type(k) || fm::is_l_type(k)) out.push_back("decomposition");
    return out;
}

VerificationReport run_suite(const FamilyId& id, const std::string& suite, const SuiteOptions& o) {
    const Kind k = id.kind();
    const bool s31 = zoo::ambient(k) == AmbientKind::S31;
    auto grid = [&](int du, int dv) {
        return zoo::default_grid(k, o.grid_u > 0 ? o.grid_u : du, o.grid_v > 0 ? o.grid_v : dv);
    };
    auto count = [&](int d) { return o.grid_u > 0 ? o.grid_u * std::max(1, o.grid_v) : d; };
    if (suite == "membership") return membership_suite(id, s31 ? grid(200, 200) : grid(100, 100), o.tol.value_or(1e-9));
    if (suite == "cmc") return cmc_suite(id, count(10000), o.seed, o.tol.value_or(s31 ? 1e-6 : 1e-8), o.how);
    if (suite == "implicit") {
        const auto which = zoo::implicit_of(k);
        if (!which) throw DomainError("implicit: not applicable to " + id.label());
        return implicit_suite(*which, grid(100, 100), o.tol.value_or(*which == zoo::Implicit::KGraph ? 1e-10 : 1e-9));
    }
    if (suite == "factorization") return factorization_suite(id, grid(50, 50), o.tol.value_or(1e-10));
    if (suite == "reflection") return reflection_suite(id, grid(50, 50), o.tol.value_or(1e-10));
    if (suite == "collapse") return collapse_suite(id, o.grid_u > 0 ? o.grid_u : 100, o.tol.value_or(1e-10));
    if (suite == "regularity") return regularity_suite(id, count(1000), o.tol.value_or(1e-9));
    if (suite == "cone") return cone_suite(id);  // gradient bound fixed at 1e-8
    if (suite == "decomposition") return decomposition_suite(id, count(1000), o.tol.value_or(1e-8));
    throw DomainError("unknown suite '" + suite + "'");
}

}  // namespace gcat::verify
