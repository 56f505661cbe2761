#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcat/curvature.hpp"
#include "gcat/zoo.hpp"

namespace gcat::verify {

constexpr std::size_t kMaxStoredFailures = 100;

struct Failure {
    std::vector<double> params;
    double residual = 0;
};

struct VerificationReport {
    std::string family;
    std::string suite;
    std::array<int, 2> grid{0, 0};
    double tolerance = 0;
    double max_residual = 0;
    std::size_t samples = 0;
    std::size_t failure_count = 0;     // all failures; `failures` keeps the first 100
    std::vector<Failure> failures;
    std::map<std::string, double> metrics;  // suite-specific extras
    double wall_time_s = 0;

    bool passed() const { return failure_count == 0; }
};

nlohmann::ordered_json to_json(const VerificationReport& r, bool with_time = true);

// |<f,f> - 1| for S31 (binary128), or the implicit residual for R31 surfaces.
VerificationReport membership_suite(const zoo::FamilyId& id, const Grid& grid, double tol);
VerificationReport membership_suite(const Surface& s, const std::string& label, std::optional<zoo::Implicit> implicit,
                                    const Grid& grid, double tol);

// Implicit companion composed with its parametrization (E, P, H; K-graph on g; LE-graph on f_LE).
VerificationReport implicit_suite(zoo::Implicit which, const Grid& grid, double tol);

// CMC-1 relative residual (S31) or |A| (R31) at n random regular points of the default box.
VerificationReport cmc_suite(const zoo::FamilyId& id, int n, std::uint64_t seed, double tol,
                             curvature::DiffSpec how = curvature::DiffSpec::dual());

VerificationReport factorization_suite(const zoo::FamilyId& id, const Grid& grid, double tol);
VerificationReport reflection_suite(const zoo::FamilyId& id, const Grid& grid, double tol);
VerificationReport collapse_suite(const zoo::FamilyId& id, int n, double tol);
VerificationReport regularity_suite(const zoo::FamilyId& id, int n, double tol, double min_speed = 1e-6);

struct ConePointReport {
    std::string label;
    std::array<double, 3> point{};
    std::array<double, 3> gradient{};
    double gradient_norm = 0;
    std::array<double, 3> eigenvalues{};  // ascending
    int positive = 0, negative = 0, zero = 0;
    bool signature_ok = false;
};

// Throws ResidualViolation when the gradient does not vanish (|grad| >= 1e-8).
ConePointReport cone_point_check(const zoo::FamilyId& id, const zoo::DCPoint& p, double h = 1e-4);
VerificationReport cone_suite(const zoo::FamilyId& id, double h = 1e-4);

enum class XClass { FImage, FCheckImage, LimitSet };
const char* to_string(XClass c);

struct XClassification {
    XClass tag = XClass::FImage;
    // FImage/FCheckImage: (s, theta) or (u, v). LimitSet: (line parameter, angle-like coordinate).
    std::array<double, 2> witness{};
    int line = 0;  // LimitSet: +1/-1 for the xi or eta branch (S-types), +1/-1 for L+/L- (LH), k index (SE)
};

XClassification classify_x_point(const zoo::FamilyId& id, const zoo::XPoint& p, double tol);
// Extension-surface point reconstructed from a classification.
std::array<double, 3> witness_point(const zoo::FamilyId& id, const XClassification& c, const zoo::XPoint& p);

VerificationReport decomposition_suite(const zoo::FamilyId& id, int n_samples, double tol);

// Names of suites applicable to a family, in run order.
std::vector<std::string> suites_for(zoo::Kind k);
std::vector<std::string> all_suite_names();

struct SuiteOptions {
    int grid_u = 0, grid_v = 0;  // 0: suite default
    std::optional<double> tol;   // suite default when empty
    curvature::DiffSpec how = curvature::DiffSpec::dual();
    std::uint64_t seed = 20240611;
};

VerificationReport run_suite(const zoo::FamilyId& id, const std::string& suite, const SuiteOptions& opt);

}  // namespace gcat::verify
