#include "gcat/curvature.hpp"

#include <cmath>
#include <string>

#include "gcat/errors.hpp"

namespace gcat::curvature {

namespace {

using lorentz::LVec3;
using lorentz::LVec4;

void require_finite(const Coords& c, const char* what) {
    for (double x : c)
        if (!std::isfinite(x)) throw DomainError(std::string("jet2: non-finite ") + what);
}

double inner(AmbientKind k, const Coords& a, const Coords& b) { return ambient_inner(k, a, b); }

double euclid_norm2(const Coords& a) { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]; }

}  // namespace

Jet2 jet2(const Surface& s, double u, double v, DiffSpec how) {
    if (!s.domain().contains(u, v)) throw DomainError("jet2: (u,v) outside the surface domain");
    Jet2 j;
    j.kind = s.kind();
    j.how = how;
    if (how.mode == DiffMode::Dual) {
        const auto c = s.jet(Dual2<double>::var_u(u), Dual2<double>::var_v(v));
        for (int k = 0; k < 4; ++k) {
            j.f[k] = c[k].val;
            j.fu[k] = c[k].u;
            j.fv[k] = c[k].v;
            j.fuu[k] = c[k].uu;
            j.fuv[k] = c[k].uv;
            j.fvv[k] = c[k].vv;
        }
    } else {
        const double h = how.h;
        if (!(h > 0) || !std::isfinite(h)) throw DomainError("jet2: central step must be > 0");
        if (!s.domain().contains(u - h, v - h) || !s.domain().contains(u + h, v + h))
            throw DomainError("jet2: central stencil leaves the domain");
        const Coords f0 = s(u, v);
        const Coords fpu = s(u + h, v), fmu = s(u - h, v);
        const Coords fpv = s(u, v + h), fmv = s(u, v - h);
        const Coords fpp = s(u + h, v + h), fpm = s(u + h, v - h);
        const Coords fmp = s(u - h, v + h), fmm = s(u - h, v - h);
        for (int k = 0; k < 4; ++k) {
            j.f[k] = f0[k];
            j.fu[k] = (fpu[k] - fmu[k]) / (2 * h);
            j.fv[k] = (fpv[k] - fmv[k]) / (2 * h);
            j.fuu[k] = (fpu[k] - 2 * f0[k] + fmu[k]) / (h * h);
            j.fvv[k] = (fpv[k] - 2 * f0[k] + fmv[k]) / (h * h);
            j.fuv[k] = (fpp[k] - fpm[k] - fmp[k] + fmm[k]) / (4 * h * h);
        }
    }
    require_finite(j.f, "value");
    require_finite(j.fu, "derivative");
    require_finite(j.fv, "derivative");
    require_finite(j.fuu, "second derivative");
    require_finite(j.fuv, "second derivative");
    require_finite(j.fvv, "second derivative");
    return j;
}

Coords unnormalized_normal(const Jet2& j) {
    if (j.kind == AmbientKind::R31) {
        const LVec3 n = lorentz::cross_lorentz3(LVec3(j.fu[0], j.fu[1], j.fu[2]), LVec3(j.fv[0], j.fv[1], j.fv[2]));
        return {n.t(), n.x(), n.y(), 0.0};
    }
    return lorentz::triple_normal4(LVec4(j.f), LVec4(j.fu), LVec4(j.fv)).coords();
}

FundForms fund_forms(const Jet2& j, AmbientKind kind) {
    if (kind != j.kind) throw DomainError("fund_forms: jet ambient does not match the declared ambient");
    if (kind == AmbientKind::S31) {
        // Absolute 1e-8 on unit-scale points; grows with |f|^2 since rounding does.
        const double r = std::abs(inner(kind, j.f, j.f) - 1.0);
        if (r > 1e-8 * std::max(1.0, euclid_norm2(j.f)))
            throw ResidualViolation("fund_forms: base point is not on de Sitter space", r);
    }
    const Coords n = unnormalized_normal(j);
    FundForms ff;
    ff.P(0, 0) = inner(kind, j.fu, j.fu);
    ff.P(0, 1) = ff.P(1, 0) = inner(kind, j.fu, j.fv);
    ff.P(1, 1) = inner(kind, j.fv, j.fv);
    ff.Q(0, 0) = inner(kind, j.fuu, n);
    ff.Q(0, 1) = ff.Q(1, 0) = inner(kind, j.fuv, n);
    ff.Q(1, 1) = inner(kind, j.fvv, n);
    ff.B = ff.P(0, 0) * ff.P(1, 1) - ff.P(0, 1) * ff.P(1, 0);
    // adj(P) = [[P11, -P01], [-P10, P00]]
    ff.A = ff.P(1, 1) * ff.Q(0, 0) - ff.P(0, 1) * ff.Q(1, 0) - ff.P(1, 0) * ff.Q(0, 1) + ff.P(0, 0) * ff.Q(1, 1);
    return ff;
}

double zmc_residual(const FundForms& ff) { return ff.A; }

double cmc1_residual(const FundForms& ff) { return ff.A * ff.A - 4 * ff.B * ff.B * ff.B; }

double cmc1_relative(const FundForms& ff) {
    return std::abs(cmc1_residual(ff)) / (1 + ff.A * ff.A + std::abs(ff.B * ff.B * ff.B));
}

double mean_curvature(const FundForms& ff) {
    if (std::abs(ff.B) <= kLightlikeTol) throw LightlikePoint("mean_curvature: |B| <= 1e-12");
    return ff.A / (2 * std::pow(std::abs(ff.B), 1.5));
}

lorentz::CausalClass classify_surface_point(const FundForms& ff, double tol) {
    return lorentz::classify_value(ff.B, tol);
}

ScanResult singular_scan(const Surface& s, const Grid& grid, double tol, DiffSpec how) {
    ScanResult out;
    const int nu = grid.u.n, nv = grid.v.n;
    std::vector<double> B(std::size_t(nu) * nv);
    std::vector<char> flag(B.size());
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double u = grid.u.at(i), v = grid.v.at(j);
            const Jet2 jt = jet2(s, u, v, how);
            const FundForms ff = fund_forms(jt, jt.kind);
            // rank(df) < 2 via the Euclidean Gram determinant of (f_u, f_v)
            const double a = euclid_norm2(jt.fu), c = euclid_norm2(jt.fv);
            double b = 0;
            for (int k = 0; k < 4; ++k) b += jt.fu[k] * jt.fv[k];
            const bool rank_def = (a * c - b * b) <= 1e-24 * std::max(1.0, a * c);
            const std::size_t idx = std::size_t(i) * nv + j;
            B[idx] = ff.B;
            flag[idx] = (std::abs(ff.B) <= tol || rank_def) ? 1 : 0;
            if (flag[idx]) out.points.push_back({i, j, u, v, ff.B, rank_def});
        }
    }
    auto at = [&](int i, int j) { return std::size_t(i) * nv + j; };
    for (int i = 0; i + 1 < nu; ++i) {
        for (int j = 0; j + 1 < nv; ++j) {
            const std::size_t c[4] = {at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)};
            bool pos = false, neg = false, any = false;
            for (auto k : c) {
                pos |= B[k] > 0;
                neg |= B[k] < 0;
                any |= flag[k] != 0;
            }
            if ((pos && neg) || any)
                out.cells.push_back({i, j, grid.u.at(i), grid.v.at(j), grid.u.at(i + 1), grid.v.at(j + 1)});
        }
    }
    return out;
}

}  // namespace gcat::curvature
