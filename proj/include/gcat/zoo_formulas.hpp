#pragma once

// Closed forms of the catenoid families, generic over the scalar type
// (double, Dual2<double>, Quad). Coefficients are formed in the real type of
// the scalar so that binary128 evaluation keeps full precision.

#include <array>
#include <cmath>

#include "gcat/dual.hpp"
#include "gcat/surface.hpp"

namespace gcat::zoo {

enum class Kind { K, E, P, H, TE, TP, TH, SE, SH, SP, LH, LE };

namespace formulas {

using std::cos, std::sin, std::cosh, std::sinh, std::exp, std::tanh, std::sqrt, std::log;

template <class T>
using X3 = std::array<T, 3>;

template <class R>
R half_ratio_minus(R m) { return (m * m - 1) / (2 * m); }  // (m^2-1)/(2m)
template <class R>
R half_ratio_plus(R m) { return (m * m + 1) / (2 * m); }  // (m^2+1)/(2m)

// Paired evaluations; binary128 gets one library call per pair.
template <class T>
std::array<T, 2> sin_cos(const T& x) { return {sin(x), cos(x)}; }
template <class T>
std::array<T, 2> sinh_cosh(const T& x) { return {sinh(x), cosh(x)}; }
std::array<Quad, 2> sin_cos(const Quad& x);
std::array<Quad, 2> sinh_cosh(const Quad& x);

template <class T>
T asinh_t(const T& w) {
    // odd extension keeps log() away from cancellation for w < 0
    if (value_of(w) < 0) return -asinh_t(T(-w));
    return log(w + sqrt(1 + w * w));
}

// R31 families, order (t,x,y).
template <class T>
CoordsT<T> f_K(const T& u, const T& v) { return {sinh(u) * cos(v), u, cosh(u) * cos(v), T(0)}; }
template <class T>
CoordsT<T> f_E(const T& u, const T& v) { return {u, sinh(u) * cos(v), sinh(u) * sin(v), T(0)}; }
template <class T>
CoordsT<T> f_P(const T& u, const T& v) {
    const T v3 = v * v * v;
    return {v - v3 / 3 + u * u * v, v + v3 / 3 - u * u * v, 2 * u * v, T(0)};
}
template <class T>
CoordsT<T> f_H(const T& u, const T& v) { return {cosh(u) * sin(v), v, sinh(u) * sin(v), T(0)}; }

// Extension graph of f_K over the (x,y) plane.
template <class T>
CoordsT<T> k_graph(const T& x, const T& y) { return {y * tanh(x), x, y, T(0)}; }
// Reparametrized sheet g(u,s) of the same graph.
template <class T>
CoordsT<T> k_graph_g(const T& u, const T& s) { return {s * sinh(u), u, s * cosh(u), T(0)}; }

// T-type profiles in the (x0,x3) plane plus the radius r(s) of the (x1,x2) circle.
template <class T>
struct TProfile {
    T x0, x3, r;
};

template <class T>
TProfile<T> profile_TE(double mu, const T& s) {
    using R = real_of_t<T>;
    const R m(mu), k = half_ratio_plus(m), c = half_ratio_minus(m);
    const auto [sh, ch] = sinh_cosh(s);
    const auto [shm, chm] = sinh_cosh(T(m * s));
    return {sh * chm - k * ch * shm, ch * chm - k * sh * shm, -c * shm};
}
template <class T>
TProfile<T> profile_TP(const T& s) {
    const auto [sh, ch] = sinh_cosh(s);
    return {sh - s / 2 * ch, ch - s / 2 * sh, s / 2};
}
template <class T>
TProfile<T> profile_TH(double nu, const T& s) {
    using R = real_of_t<T>;
    const R n(nu), cn = half_ratio_minus(n), d = half_ratio_plus(n);
    const auto [sn, cs] = sin_cos(s);
    const auto [sh, ch] = sinh_cosh(T(s / n));
    return {sn * sh - cn * cs * ch, sn * ch - cn * cs * sh, d * cs};
}

template <class T>
TProfile<T> t_profile(Kind k, double p, const T& s) {
    switch (k) {
        case Kind::TE: return profile_TE(p, s);
        case Kind::TP: return profile_TP(s);
        default: return profile_TH(p, s);
    }
}

// S-type data: gamma0 carries e^{+-s}; (x1,x2) is the profile in x3 = 0.
template <class T>
struct SProfile {
    T g0, x1, x2;
};

template <class T>
SProfile<T> profile_SE(double mu, const T& th) {
    using R = real_of_t<T>;
    const R m(mu), k = half_ratio_plus(m), c = half_ratio_minus(m);
    const auto [sm, cm] = sin_cos(T(m * th));
    const auto [st, ct] = sin_cos(th);
    return {-c * cm, -k * ct * cm - st * sm, -k * st * cm + ct * sm};
}
template <class T>
SProfile<T> profile_SH(double nu, const T& th) {
    using R = real_of_t<T>;
    const R n(nu), cn = half_ratio_minus(n), d = half_ratio_plus(n);
    const auto [sh, ch] = sinh_cosh(T(n * th));
    const auto [st, ct] = sin_cos(th);
    return {d * sh, cn * ct * sh + st * ch, cn * st * sh - ct * ch};
}
template <class T>
SProfile<T> profile_SP(const T& t) {
    const auto [st, ct] = sin_cos(t);
    return {-t / 2, t * ct / 2 - st, t * st / 2 + ct};
}

template <class T>
SProfile<T> s_profile(Kind k, double p, const T& th) {
    switch (k) {
        case Kind::SE: return profile_SE(p, th);
        case Kind::SH: return profile_SH(p, th);
        default: return profile_SP(th);
    }
}

template <class T>
T y_LH(const T& v) { return cos(2 * v) + v * sin(2 * v); }
template <class T>
T y_LE(const T& v) { return cosh(2 * v) - v * sinh(2 * v); }

template <class T>
CoordsT<T> f_LH(const T& u, const T& v) {
    const auto [s2, c2] = sin_cos(T(2 * v));
    const T q = u * u + v * v;
    return {v * c2 + q / 2 * s2, u * s2, c2 + v * s2, v * c2 + (q - 2) / 2 * s2};
}
template <class T>
CoordsT<T> f_LE(const T& u, const T& v) {
    const auto [s2, c2] = sinh_cosh(T(2 * v));
    const T q = u * u + v * v;
    return {v * c2 - (q + 2) / 2 * s2, -u * s2, c2 - v * s2, v * c2 - q / 2 * s2};
}

inline bool is_t_type(Kind k) { return k == Kind::TE || k == Kind::TP || k == Kind::TH; }
inline bool is_s_type(Kind k) { return k == Kind::SE || k == Kind::SH || k == Kind::SP; }
inline bool is_l_type(Kind k) { return k == Kind::LH || k == Kind::LE; }

template <class T>
CoordsT<T> eval(Kind k, double p, const T& u, const T& v) {
    switch (k) {
        case Kind::K: return f_K(u, v);
        case Kind::E: return f_E(u, v);
        case Kind::P: return f_P(u, v);
        case Kind::H: return f_H(u, v);
        case Kind::TE:
        case Kind::TP:
        case Kind::TH: {
            const auto pr = t_profile(k, p, u);
            const auto [sv, cv] = sin_cos(v);
            return {pr.x0, pr.r * cv, pr.r * sv, pr.x3};
        }
        case Kind::SE:
        case Kind::SH:
        case Kind::SP: {
            const auto pr = s_profile(k, p, v);
            const auto [su, cu] = sinh_cosh(u);
            return {cu * pr.g0, pr.x1, pr.x2, su * pr.g0};
        }
        case Kind::LH: return f_LH(u, v);
        case Kind::LE: return f_LE(u, v);
    }
    return {};
}

// Coordinates on the extension surface: (xi, eta, theta) for S-types,
// (xi, x, v) for L-types, (xi, eta, s) for T-types.
template <class T>
X3<T> to_x(Kind k, double p, const T& s, const T& th) {
    const CoordsT<T> f = eval(k, p, s, th);
    if (is_s_type(k)) return {f[0] + f[3], f[0] - f[3], th};
    if (is_l_type(k)) return {f[0] + f[3], f[1], th};
    return {f[1], f[2], s};
}

template <class T>
CoordsT<T> embed(Kind k, double p, const X3<T>& X) {
    if (is_s_type(k)) {
        const auto pr = s_profile(k, p, X[2]);
        return {(X[0] + X[1]) / 2, pr.x1, pr.x2, (X[0] - X[1]) / 2};
    }
    if (k == Kind::LH) {
        const T s2 = sin(2 * X[2]);
        return {(X[0] + s2) / 2, X[1], y_LH(X[2]), (X[0] - s2) / 2};
    }
    if (k == Kind::LE) {
        const T s2 = sinh(2 * X[2]);
        return {(X[0] - s2) / 2, X[1], y_LE(X[2]), (X[0] + s2) / 2};
    }
    const auto pr = t_profile(k, p, X[2]);
    return {pr.x0, X[0], X[1], pr.x3};
}

// Defining function of the extension surface and the size of its terms.
template <class T>
T x_residual(Kind k, double p, const X3<T>& X) {
    if (is_s_type(k)) {
        const T g = s_profile(k, p, X[2]).g0;
        return X[0] * X[1] - g * g;
    }
    if (k == Kind::LH) {
        const T y = y_LH(X[2]);
        return -X[0] * sin(2 * X[2]) + X[1] * X[1] + y * y - 1;
    }
    if (k == Kind::LE) {
        const T y = y_LE(X[2]);
        return X[0] * sinh(2 * X[2]) + X[1] * X[1] + y * y - 1;
    }
    const T r = t_profile(k, p, X[2]).r;
    return X[0] * X[0] + X[1] * X[1] - r * r;
}

template <class T>
T x_residual_scale(Kind k, double p, const X3<T>& X) {
    using std::abs;
    if (is_s_type(k)) {
        const T g = s_profile(k, p, X[2]).g0;
        return abs(X[0] * X[1]) + g * g;
    }
    if (k == Kind::LH) {
        const T y = y_LH(X[2]);
        return abs(X[0] * sin(2 * X[2])) + X[1] * X[1] + y * y + 1;
    }
    if (k == Kind::LE) {
        const T y = y_LE(X[2]);
        return abs(X[0] * sinh(2 * X[2])) + X[1] * X[1] + y * y + 1;
    }
    const T r = t_profile(k, p, X[2]).r;
    return X[0] * X[0] + X[1] * X[1] + r * r;
}

// Implicit companions in (t,x,y).
template <class T>
T F_E(const CoordsT<T>& q) { return q[1] * q[1] + q[2] * q[2] - sinh(q[0]) * sinh(q[0]); }
template <class T>
T F_P(const CoordsT<T>& q) {
    const T t = q[0], x = q[1], y = q[2], w = x + t;
    return 12 * (x * x - t * t) - w * w * w * w + 12 * y * y;
}
template <class T>
T F_H(const CoordsT<T>& q) { return sin(q[1]) * sin(q[1]) + q[2] * q[2] - q[0] * q[0]; }
template <class T>
T F_Kgraph(const CoordsT<T>& q) { return q[0] - q[2] * tanh(q[1]); }
// LE graph form: x2 = sqrt(1+w^2) - (w/2) asinh(w), w = x0 - x3.
template <class T>
T F_LEgraph(const CoordsT<T>& q) {
    const T w = q[0] - q[3];
    return q[2] - sqrt(1 + w * w) + w / 2 * asinh_t(w);
}

}  // namespace formulas
}  // namespace gcat::zoo
