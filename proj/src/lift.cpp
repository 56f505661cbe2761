#include "gcat/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcat/errors.hpp"
#include "gcat/zoo_formulas.hpp"

namespace gcat::lift {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(const Vec& v) { return v.allFinite(); }

Eigen::MatrixXd fd_jacobian(const ChartedMap& f, const Vec& x, const Vec& fx, double step) {
    const int n = int(x.size());
    Eigen::MatrixXd J(fx.size(), n);
    for (int j = 0; j < n; ++j) {
        const double h = step * std::max(1.0, std::abs(x[j]));
        Vec xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const bool up = f.domain.contains(xp), down = f.domain.contains(xm);
        if (up && down)
            J.col(j) = f.diff(f.forward(xp), f.forward(xm)) / (2 * h);
        else if (up)
            J.col(j) = f.diff(f.forward(xp), fx) / h;
        else if (down)
            J.col(j) = f.diff(fx, f.forward(xm)) / h;
        else
            J.col(j).setZero();
    }
    return J;
}

}  // namespace

// ---- Box

Box Box::whole(int dim) {
    return {std::vector<double>(dim, -kInf), std::vector<double>(dim, kInf), std::vector<bool>(dim, false),
            std::vector<bool>(dim, false)};
}

bool Box::contains(const Vec& x) const {
    if (x.size() != Eigen::Index(lo.size()) || !finite(x)) return false;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (open_lo[j] ? !(x[j] > lo[j]) : !(x[j] >= lo[j])) return false;
        if (open_hi[j] ? !(x[j] < hi[j]) : !(x[j] <= hi[j])) return false;
    }
    return true;
}

double Box::distance_to_boundary(const Vec& x) const {
    double d = kInf;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (std::isfinite(lo[j])) d = std::min(d, std::abs(x[j] - lo[j]));
        if (std::isfinite(hi[j])) d = std::min(d, std::abs(hi[j] - x[j]));
    }
    return d;
}

// ---- ChartedMap

double ChartedMap::distance_to_boundary(const Vec& x) const {
    double d = domain.distance_to_boundary(x);
    for (const auto& e : excluded) d = std::min(d, e(x));
    return d;
}

NewtonResult ChartedMap::solve(const Vec& y, const Vec& seed, const NewtonOptions& opt) const {
    NewtonResult res;
    res.x = seed;
    if (!domain.contains(seed)) {
        res.residual = kInf;
        return res;
    }
    Vec fx = forward(res.x);
    Vec r = diff(fx, y);
    res.residual = r.norm();
    bool polished = false;
    while (res.iterations < opt.max_iter) {
        if (res.residual <= opt.tol && polished) break;
        const bool polishing = res.residual <= opt.tol;
        const Eigen::MatrixXd J = fd_jacobian(*this, res.x, fx, opt.fd_step);
        const Vec dx = J.colPivHouseholderQr().solve(-r);
        ++res.iterations;
        if (!finite(dx)) break;
        // backtrack until inside the domain with a smaller residual
        double a = 1.0;
        bool moved = false;
        for (int k = 0; k < 60; ++k, a *= 0.5) {
            const Vec xn = res.x + a * dx;
            if (!domain.contains(xn)) continue;
            const Vec fn = forward(xn);
            const Vec rn = diff(fn, y);
            const double nn = rn.norm();
            if (std::isfinite(nn) && nn < res.residual) {
                res.x = xn;
                fx = fn;
                r = rn;
                res.residual = nn;
                moved = true;
                break;
            }
        }
        if (polishing) {
            polished = true;
            continue;
        }
        if (!moved) break;
    }
    res.converged = res.residual <= opt.tol;
    return res;
}

Vec ChartedMap::local_inverse(const Vec& y, const Vec& seed, const NewtonOptions& opt) const {
    const NewtonResult r = solve(y, seed, opt);
    if (!r.converged) throw NewtonFailure("local_inverse: no convergence for " + label, r.iterations, r.residual);
    return r.x;
}

const char* to_string(LiftStatus s) {
    switch (s) {
        case LiftStatus::Advancing: return "Advancing";
        case LiftStatus::Converged: return "Converged";
        case LiftStatus::BoundaryEscape: return "BoundaryEscape";
        case LiftStatus::Oscillating: return "Oscillating";
        case LiftStatus::NewtonFailure: return "NewtonFailure";
    }
    return "?";
}

const char* to_string(EndTest::Kind k) {
    switch (k) {
        case EndTest::Kind::Converged: return "Converged";
        case EndTest::Kind::Oscillating: return "Oscillating";
        case EndTest::Kind::Diverging: return "Diverging";
    }
    return "?";
}

std::optional<Vec> LiftTrace::at(double t) const {
    for (const auto& s : states)
        if (s.t == t) return s.sigma;
    return std::nullopt;
}

Vec local_lift(const ChartedMap& f, const AnalyticCurve& g, double t0, const Vec& seed, const NewtonOptions& opt) {
    return f.local_inverse(g.map(t0), seed, opt);
}

LiftTrace continue_lift(const ChartedMap& f, const AnalyticCurve& g, const Vec& sigma0, double t0, const LiftOptions& opt) {
    if (!(opt.initial_step > 0) || !(opt.min_step > 0)) throw DomainError("continue_lift: steps must be > 0");
    LiftTrace tr;
    const double hmax = opt.max_step > 0 ? opt.max_step : opt.initial_step;
    double t = t0, h = opt.initial_step;
    Vec sigma = sigma0, prev;
    double t_prev = t0;
    bool have_prev = false;
    int streak = 0;
    tr.states.push_back({t, sigma, h, LiftStatus::Advancing});

    auto finish = [&](LiftStatus s) {
        tr.status = s;
        tr.states.push_back({t, sigma, h, s});
        return tr;
    };

    while (t < 1.0) {
        if (tr.corrector_iterations > opt.corrector_budget) {
            tr.budget_exhausted = true;
            return finish(LiftStatus::NewtonFailure);
        }
        const double he = std::min(h, 1.0 - t);
        const double tn = (1.0 - t <= h) ? 1.0 : t + he;
        Vec pred = sigma;
        if (have_prev) pred = sigma + (sigma - prev) * ((tn - t) / (t - t_prev));
        if (!f.domain.contains(pred)) pred = sigma;
        const NewtonResult r = f.solve(g.map(tn), pred, opt.newton);
        tr.corrector_iterations += r.iterations;
        const double jump_limit = std::max(opt.jump_floor, 0.5 * (pred - sigma).norm());
        if (r.converged && (r.x - pred).norm() <= jump_limit) {
            prev = sigma;
            t_prev = t;
            have_prev = true;
            sigma = r.x;
            t = tn;
            tr.states.push_back({t, sigma, h, LiftStatus::Advancing});
            if (++streak >= 2 && h < hmax) {
                h = std::min(2 * h, hmax);
                streak = 0;
            }
            continue;
        }
        streak = 0;
        h *= 0.5;
        if (h < opt.min_step) {
            // stalled before t = 1
            if (f.distance_to_boundary(sigma) < opt.boundary_tol) return finish(LiftStatus::BoundaryEscape);
            if (tr.states.size() >= opt.window) {
                std::vector<std::pair<double, Vec>> tail;
                for (const auto& s : tr.states) tail.emplace_back(s.t, s.sigma);
                tr.end = end_convergence(tail, opt.cluster_sep, opt.window);
                if (tr.end->kind == EndTest::Kind::Oscillating) return finish(LiftStatus::Oscillating);
            }
            return finish(LiftStatus::NewtonFailure);
        }
    }

    // Reached t = 1: probe the approach t_k -> 1 from below.
    Vec s = sigma;
    for (int k = int(opt.window) - 1; k >= 1; --k) {
        const double tk = 1.0 - std::ldexp(1.0, -(opt.tail_offset + k));
        const NewtonResult r = f.solve(g.map(tk), s, opt.newton);
        tr.corrector_iterations += r.iterations;
        if (!r.converged) return finish(LiftStatus::NewtonFailure);
        s = r.x;
        tr.tail.emplace_back(tk, s);
    }
    tr.tail.emplace_back(1.0, sigma);
    tr.end = end_convergence(tr.tail, opt.cluster_sep, opt.window);
    switch (tr.end->kind) {
        case EndTest::Kind::Converged: return finish(LiftStatus::Converged);
        case EndTest::Kind::Oscillating: return finish(LiftStatus::Oscillating);
        case EndTest::Kind::Diverging: return finish(LiftStatus::BoundaryEscape);
    }
    return finish(LiftStatus::NewtonFailure);
}

EndTest end_convergence(const std::vector<std::pair<double, Vec>>& trace, double tol, std::size_t window) {
    if (window < 2 || trace.size() < window)
        throw InsufficientSamples("end_convergence: need at least " + std::to_string(window) + " samples");
    std::vector<Vec> tail;
    for (std::size_t i = trace.size() - window; i < trace.size(); ++i) tail.push_back(trace[i].second);
    double diam = 0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (!finite(tail[i])) return {EndTest::Kind::Diverging, {}, {}};
        for (std::size_t j = i + 1; j < tail.size(); ++j) diam = std::max(diam, (tail[i] - tail[j]).norm());
    }
    EndTest out;
    if (diam < tol) {
        out.kind = EndTest::Kind::Converged;
        out.limit = tail.back();
        return out;
    }
    // single-linkage clusters at separation tol
    std::vector<int> label(tail.size(), -1);
    int nc = 0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (label[i] >= 0) continue;
        label[i] = nc;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < tail.size(); ++b)
                if (label[b] < 0 && (tail[a] - tail[b]).norm() < tol) {
                    label[b] = nc;
                    stack.push_back(b);
                }
        }
        ++nc;
    }
    std::vector<int> size(nc, 0);
    for (int l : label) ++size[l];
    const bool stable = nc >= 2 && std::all_of(size.begin(), size.end(), [](int s) { return s >= 2; });
    if (!stable) {
        out.kind = EndTest::Kind::Diverging;
        return out;
    }
    out.kind = EndTest::Kind::Oscillating;
    for (int c = 0; c < nc; ++c) {
        Vec m = Vec::Zero(tail[0].size());
        for (std::size_t i = 0; i < tail.size(); ++i)
            if (label[i] == c) m += tail[i];
        out.accumulation.push_back(m / size[c]);
    }
    std::sort(out.accumulation.begin(), out.accumulation.end(), [](const Vec& a, const Vec& b) {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    });
    return out;
}

double recover_limit_periodic(const std::function<double(double)>& f, std::span<const double> phi, double tol,
                              double cluster_sep) {
    if (phi.size() < 2) throw PreconditionViolation("recover_limit_periodic: need at least two samples");
    double lo = kInf, hi = -kInf;
    for (double p : phi) {
        if (!std::isfinite(p)) throw PreconditionViolation("recover_limit_periodic: unbounded tail");
        const double v = f(p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi - lo <= tol)) throw PreconditionViolation("recover_limit_periodic: f o phi tail is not Cauchy");
    std::vector<double> s(phi.begin(), phi.end());
    std::sort(s.begin(), s.end());
    std::vector<double> centers;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= s.size(); ++i) {
        if (i == s.size() || s[i] - s[i - 1] > cluster_sep) {
            double m = 0;
            for (std::size_t j = start; j < i; ++j) m += s[j];
            centers.push_back(m / double(i - start));
            start = i;
        }
    }
    if (centers.size() > 1) throw MultipleAccumulationPoints("recover_limit_periodic: tail has several accumulation points", centers);
    return phi.back();
}

// ---- fixtures

namespace {

double wrap(double d) { return d - std::round(d); }

Fixture torus_line() {
    static const double r2 = std::sqrt(2.0);
    Fixture fx;
    fx.name = "torus-line";
    fx.description = "t -> (t, sqrt2 t) mod Z^2 along its own image over t in [0,10]";
    fx.map.label = "torus line";
    fx.map.domain = Box::whole(1);
    fx.map.forward = [](const Vec& x) {
        Vec y(2);
        y << x[0] - std::floor(x[0]), r2 * x[0] - std::floor(r2 * x[0]);
        return y;
    };
    fx.map.difference = [](const Vec& a, const Vec& b) {
        Vec d(a.size());
        for (Eigen::Index i = 0; i < a.size(); ++i) d[i] = wrap(a[i] - b[i]);
        return d;
    };
    fx.curve.label = "torus-line";
    fx.curve.map = [](double t) {
        Vec y(2);
        const double a = 10 * t, b = 10 * r2 * t;
        y << a - std::floor(a), b - std::floor(b);
        return y;
    };
    fx.seed = Vec::Zero(1);
    return fx;
}

Fixture kok_crossing() {
    Fixture fx;
    fx.name = "kok-crossing";
    fx.description = "t -> (t, exp(-1/t)) on (0,inf) along F(1/2 - t), F the even smooth extension";
    fx.map.label = "flat exponential";
    fx.map.domain = {{0.0}, {kInf}, {true}, {false}};
    fx.map.forward = [](const Vec& x) {
        Vec y(2);
        y << x[0], std::exp(-1.0 / x[0]);
        return y;
    };
    fx.curve.label = "kok-crossing";
    fx.curve.map = [](double t) {
        const double s = 0.5 - t;
        Vec y(2);
        y << s, s == 0 ? 0.0 : std::exp(-1.0 / std::abs(s));
        return y;
    };
    fx.seed = Vec::Constant(1, 0.5);
    return fx;
}

Fixture k_graph_segment() {
    Fixture fx;
    fx.name = "k-graph-segment";
    fx.description = "entire graph (y tanh x, x, y) along the straight segment x = 0.7, y from -1 to 2";
    fx.map.label = "K graph";
    fx.map.domain = Box::whole(2);
    fx.map.forward = [](const Vec& x) {
        const auto c = zoo::formulas::k_graph<double>(x[0], x[1]);
        Vec y(3);
        y << c[0], c[1], c[2];
        return y;
    };
    fx.curve.label = "k-graph-segment";
    fx.curve.map = [](double t) {
        const auto c = zoo::formulas::k_graph<double>(0.7, -1.0 + 3.0 * t);
        Vec y(3);
        y << c[0], c[1], c[2];
        return y;
    };
    fx.seed = Vec(2);
    fx.seed << 0.7, -1.0;
    return fx;
}

}  // namespace

std::vector<std::string> fixture_names() { return {"torus-line", "kok-crossing", "k-graph-segment"}; }

Fixture fixture(const std::string& name) {
    if (name == "torus-line") return torus_line();
    if (name == "kok-crossing") return kok_crossing();
    if (name == "k-graph-segment") return k_graph_segment();
    throw DomainError("unknown lift fixture '" + name + "'");
}

nlohmann::ordered_json to_json(const LiftTrace& tr, const std::string& name) {
    auto vec = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    nlohmann::ordered_json j;
    j["fixture"] = name;
    j["status"] = to_string(tr.status);
    j["t_final"] = tr.last().t;
    j["sigma_final"] = vec(tr.last().sigma);
    j["corrector_iterations"] = tr.corrector_iterations;
    j["budget_exhausted"] = tr.budget_exhausted;
    if (tr.end) {
        nlohmann::ordered_json e;
        e["kind"] = to_string(tr.end->kind);
        if (tr.end->limit.size()) e["limit"] = vec(tr.end->limit);
        auto acc = nlohmann::ordered_json::array();
        for (const auto& a : tr.end->accumulation) acc.push_back(vec(a));
        e["accumulation"] = acc;
        j["end_test"] = e;
    }
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : tr.states) {
        nlohmann::ordered_json e;
        e["t"] = s.t;
        e["sigma"] = vec(s.sigma);
        e["step"] = s.step;
        e["status"] = to_string(s.status);
        arr.push_back(e);
    }
    j["trace"] = arr;
    return j;
}

}  // namespace gcat::lift
