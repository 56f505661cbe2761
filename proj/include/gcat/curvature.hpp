#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gcat/lorentz.hpp"
#include "gcat/surface.hpp"

namespace gcat::curvature {

constexpr double kLightlikeTol = 1e-12;

enum class DiffMode { Dual, Central };

struct DiffSpec {
    DiffMode mode = DiffMode::Dual;
    double h = 0;  // central step; unused for Dual

    static DiffSpec dual() { return {DiffMode::Dual, 0}; }
    static DiffSpec central(double h) { return {DiffMode::Central, h}; }
};

struct Jet2 {
    AmbientKind kind = AmbientKind::R31;
    Coords f{}, fu{}, fv{}, fuu{}, fuv{}, fvv{};
    DiffSpec how;
};

struct FundForms {
    Eigen::Matrix2d P = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d Q = Eigen::Matrix2d::Zero();
    double B = 0;
    double A = 0;
};

Jet2 jet2(const Surface& s, double u, double v, DiffSpec how = DiffSpec::dual());

// Unnormalized normal: f_u x_L f_v in R31, triple_normal4(f, f_u, f_v) in S31.
Coords unnormalized_normal(const Jet2& j);

FundForms fund_forms(const Jet2& j, AmbientKind kind);
inline FundForms fund_forms(const Jet2& j) { return fund_forms(j, j.kind); }

double zmc_residual(const FundForms& ff);
double cmc1_residual(const FundForms& ff);
// |A^2 - 4B^3| / (1 + A^2 + |B|^3)
double cmc1_relative(const FundForms& ff);
double mean_curvature(const FundForms& ff);
lorentz::CausalClass classify_surface_point(const FundForms& ff, double tol = lorentz::kDefaultCausalTol);

struct ScanPoint {
    int i = 0, j = 0;
    double u = 0, v = 0;
    double B = 0;
    bool rank_deficient = false;
};

// Cell [i,i+1]x[j,j+1] whose corners change sign of B or touch a flagged vertex.
struct ScanCell {
    int i = 0, j = 0;
    double u0 = 0, v0 = 0, u1 = 0, v1 = 0;
};

struct ScanResult {
    std::vector<ScanPoint> points;  // row-major: i over u, then j over v
    std::vector<ScanCell> cells;
};

ScanResult singular_scan(const Surface& s, const Grid& grid, double tol, DiffSpec how = DiffSpec::dual());

}  // namespace gcat::curvature
