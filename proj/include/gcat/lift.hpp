#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace gcat::lift {

using Vec = Eigen::VectorXd;

struct AnalyticCurve {
    std::function<Vec(double)> map;         // [0,1] -> ambient
    std::function<Vec(double)> derivative;  // may be empty
    std::string label;
};

// Axis-aligned parameter box; infinite bounds allowed.
struct Box {
    std::vector<double> lo, hi;
    std::vector<bool> open_lo, open_hi;

    static Box whole(int dim);
    bool contains(const Vec& x) const;
    // Distance to the nearest finite face; +inf for an unbounded box.
    double distance_to_boundary(const Vec& x) const;
};

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 50;
    double fd_step = 1e-7;
};

struct NewtonResult {
    Vec x;
    int iterations = 0;
    double residual = 0;
    bool converged = false;
};

struct ChartedMap {
    std::string label;
    std::function<Vec(const Vec&)> forward;
    Box domain;
    // Ambient difference a - b; empty means plain subtraction (tori wrap here).
    std::function<Vec(const Vec&, const Vec&)> difference;
    // Distances to registered DC parameter loci, treated as boundary.
    std::vector<std::function<double(const Vec&)>> excluded;

    Vec diff(const Vec& a, const Vec& b) const { return difference ? difference(a, b) : Vec(a - b); }
    double residual(const Vec& x, const Vec& y) const { return diff(forward(x), y).norm(); }
    double distance_to_boundary(const Vec& x) const;

    // Gauss-Newton solve of forward(x) = y from `seed`; never leaves the domain.
    NewtonResult solve(const Vec& y, const Vec& seed, const NewtonOptions& opt = {}) const;
    // As solve(), throwing NewtonFailure when it does not converge.
    Vec local_inverse(const Vec& y, const Vec& seed, const NewtonOptions& opt = {}) const;
};

enum class LiftStatus { Advancing, Converged, BoundaryEscape, Oscillating, NewtonFailure };
const char* to_string(LiftStatus s);

struct LiftState {
    double t = 0;
    Vec sigma;
    double step = 0;
    LiftStatus status = LiftStatus::Advancing;
};

struct LiftOptions {
    double initial_step = 1e-2;
    double min_step = 1e-8;
    double max_step = 0;  // 0: same as initial_step
    NewtonOptions newton;
    std::size_t window = 16;
    double cluster_sep = 1e-3;
    double boundary_tol = 1e-6;
    double jump_floor = 0.25;  // corrector may move at most max(this, half the predictor step)
    long corrector_budget = 100000;
    int tail_offset = 16;  // end-test tail at t_k = 1 - 2^-(offset+k)
};

struct EndTest {
    enum class Kind { Converged, Oscillating, Diverging } kind = Kind::Diverging;
    Vec limit;
    std::vector<Vec> accumulation;
};
const char* to_string(EndTest::Kind k);

struct LiftTrace {
    std::vector<LiftState> states;
    LiftStatus status = LiftStatus::Advancing;
    long corrector_iterations = 0;
    bool budget_exhausted = false;
    std::optional<EndTest> end;
    std::vector<std::pair<double, Vec>> tail;  // end-test samples

    const LiftState& last() const { return states.back(); }
    // sigma at a trace parameter t, when t was visited exactly.
    std::optional<Vec> at(double t) const;
};

Vec local_lift(const ChartedMap& f, const AnalyticCurve& g, double t0, const Vec& seed, const NewtonOptions& opt = {});

LiftTrace continue_lift(const ChartedMap& f, const AnalyticCurve& g, const Vec& sigma0, double t0,
                        const LiftOptions& opt = {});

// Cauchy test on the last `window` samples; clusters at separation `tol` otherwise.
EndTest end_convergence(const std::vector<std::pair<double, Vec>>& trace, double tol = 1e-3, std::size_t window = 16);

// Limit of phi given that f o phi converges, f periodic and nonconstant.
double recover_limit_periodic(const std::function<double(double)>& f, std::span<const double> phi, double tol,
                              double cluster_sep = 1e-3);

struct Fixture {
    std::string name;
    std::string description;
    ChartedMap map;
    AnalyticCurve curve;
    Vec seed;
    double t0 = 0;
};

std::vector<std::string> fixture_names();
Fixture fixture(const std::string& name);  // throws DomainError for unknown names

nlohmann::ordered_json to_json(const LiftTrace& tr, const std::string& name);

}  // namespace gcat::lift
