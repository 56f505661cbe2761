#pragma once

#include <cmath>
#include <concepts>
#include <type_traits>

namespace gcat {

// Truncated second-order jet in two variables (u,v): value, gradient and Hessian.
template <class T>
struct Dual2 {
    T val{}, u{}, v{}, uu{}, uv{}, vv{};

    Dual2() = default;
    Dual2(T c) : val(c) {}  // NOLINT: constants promote implicitly
    template <class S>
        requires std::is_arithmetic_v<S> && (!std::is_same_v<S, T>)
    Dual2(S c) : val(T(c)) {}
    Dual2(T val_, T u_, T v_, T uu_, T uv_, T vv_) : val(val_), u(u_), v(v_), uu(uu_), uv(uv_), vv(vv_) {}

    static Dual2 var_u(T x) { return {x, T(1), T(0), T(0), T(0), T(0)}; }
    static Dual2 var_v(T x) { return {x, T(0), T(1), T(0), T(0), T(0)}; }

    Dual2& operator+=(const Dual2& o) { return *this = *this + o; }
    Dual2& operator-=(const Dual2& o) { return *this = *this - o; }
    Dual2& operator*=(const Dual2& o) { return *this = *this * o; }
    Dual2& operator/=(const Dual2& o) { return *this = *this / o; }

    friend Dual2 operator+(const Dual2& a, const Dual2& b) {
        return {a.val + b.val, a.u + b.u, a.v + b.v, a.uu + b.uu, a.uv + b.uv, a.vv + b.vv};
    }
    friend Dual2 operator-(const Dual2& a, const Dual2& b) {
        return {a.val - b.val, a.u - b.u, a.v - b.v, a.uu - b.uu, a.uv - b.uv, a.vv - b.vv};
    }
    friend Dual2 operator-(const Dual2& a) { return {-a.val, -a.u, -a.v, -a.uu, -a.uv, -a.vv}; }
    friend Dual2 operator*(const Dual2& a, const Dual2& b) {
        return {a.val * b.val,
                a.u * b.val + a.val * b.u,
                a.v * b.val + a.val * b.v,
                a.uu * b.val + 2 * a.u * b.u + a.val * b.uu,
                a.uv * b.val + a.u * b.v + a.v * b.u + a.val * b.uv,
                a.vv * b.val + 2 * a.v * b.v + a.val * b.vv};
    }
    friend Dual2 operator/(const Dual2& a, const Dual2& b) { return a * chain(b, 1 / b.val, -1 / (b.val * b.val), 2 / (b.val * b.val * b.val)); }

    // phi(a) given phi, phi', phi'' at a.val
    friend Dual2 chain(const Dual2& a, T f0, T f1, T f2) {
        return {f0,
                f1 * a.u,
                f1 * a.v,
                f2 * a.u * a.u + f1 * a.uu,
                f2 * a.u * a.v + f1 * a.uv,
                f2 * a.v * a.v + f1 * a.vv};
    }

    friend Dual2 sin(const Dual2& a) {
        using std::sin, std::cos;
        const T s = sin(a.val), c = cos(a.val);
        return chain(a, s, c, -s);
    }
    friend Dual2 cos(const Dual2& a) {
        using std::sin, std::cos;
        const T s = sin(a.val), c = cos(a.val);
        return chain(a, c, -s, -c);
    }
    friend Dual2 sinh(const Dual2& a) {
        using std::sinh, std::cosh;
        const T s = sinh(a.val), c = cosh(a.val);
        return chain(a, s, c, s);
    }
    friend Dual2 cosh(const Dual2& a) {
        using std::sinh, std::cosh;
        const T s = sinh(a.val), c = cosh(a.val);
        return chain(a, c, s, c);
    }
    friend Dual2 exp(const Dual2& a) {
        using std::exp;
        const T e = exp(a.val);
        return chain(a, e, e, e);
    }
    friend Dual2 log(const Dual2& a) {
        using std::log;
        return chain(a, log(a.val), 1 / a.val, -1 / (a.val * a.val));
    }
    friend Dual2 sqrt(const Dual2& a) {
        using std::sqrt;
        const T r = sqrt(a.val);
        return chain(a, r, 1 / (2 * r), -1 / (4 * r * a.val));
    }
    friend Dual2 tanh(const Dual2& a) {
        using std::tanh;
        const T th = tanh(a.val), s2 = 1 - th * th;
        return chain(a, th, s2, -2 * th * s2);
    }
    friend Dual2 asinh(const Dual2& a) {
        using std::asinh, std::sqrt;
        const T q = 1 + a.val * a.val, r = sqrt(q);
        return chain(a, asinh(a.val), 1 / r, -a.val / (q * r));
    }
};

template <class T, class S>
    requires std::is_arithmetic_v<S>
Dual2<T> operator+(const Dual2<T>& a, S b) { return a + Dual2<T>(T(b)); }
template <class T, class S>
    requires std::is_arithmetic_v<S>
Dual2<T> operator+(S b, const Dual2<T>& a) { return Dual2<T>(T(b)) + a; }
template <class T, class S>
    requires std::is_arithmetic_v<S>
Dual2<T> operator-(const Dual2<T>& a, S b) { return a - Dual2<T>(T(b)); }
template <class T, class S>
    requires std::is_arithmetic_v<S>
Dual2<T> operator-(S b, const Dual2<T>& a) { return Dual2<T>(T(b)) - a; }
template <class T, class S>
    requires std::is_arithmetic_v<S>
Dual2<T> operator*(const Dual2<T>& a, S b) { return a * Dual2<T>(T(b)); }
template <class T, class S>
    requires std::is_arithmetic_v<S>
Dual2<T> operator*(S b, const Dual2<T>& a) { return Dual2<T>(T(b)) * a; }
template <class T, class S>
    requires std::is_arithmetic_v<S>
Dual2<T> operator/(const Dual2<T>& a, S b) { return a / Dual2<T>(T(b)); }
template <class T, class S>
    requires std::is_arithmetic_v<S>
Dual2<T> operator/(S b, const Dual2<T>& a) { return Dual2<T>(T(b)) / a; }

// Underlying real type of a scalar used in the closed-form formulas.
template <class T>
struct real_of {
    using type = T;
};
template <class T>
struct real_of<Dual2<T>> {
    using type = T;
};
template <class T>
using real_of_t = typename real_of<T>::type;

template <class T>
inline const T& value_of(const T& x) { return x; }
template <class T>
inline const T& value_of(const Dual2<T>& x) { return x.val; }

}  // namespace gcat
