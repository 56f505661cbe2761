#include "gcat/lorentz.hpp"

#include <cmath>
#include <string>

#include "gcat/errors.hpp"

namespace gcat::lorentz {

namespace {

void require_finite(std::span<const double> c, const char* what) {
    for (double x : c)
        if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite component");
}

void require_unit(std::span<const double> P) {
    if (P.empty()) throw DomainError("cone map: empty direction");
    require_finite(P, "cone map");
    double n2 = 0;
    for (double x : P) n2 += x * x;
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw DomainError("cone map: direction is not a unit vector");
}

double det3(const std::array<double, 3>& a, const std::array<double, 3>& b, const std::array<double, 3>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

}  // namespace

LVec3::LVec3(double t, double x, double y) : c_{t, x, y} { require_finite(c_, "LVec3"); }
LVec4::LVec4(double x0, double x1, double x2, double x3) : c_{x0, x1, x2, x3} { require_finite(c_, "LVec4"); }

LVec3 operator+(const LVec3& a, const LVec3& b) { return {a.t() + b.t(), a.x() + b.x(), a.y() + b.y()}; }
LVec3 operator-(const LVec3& a, const LVec3& b) { return {a.t() - b.t(), a.x() - b.x(), a.y() - b.y()}; }
LVec3 operator*(double s, const LVec3& a) { return {s * a.t(), s * a.x(), s * a.y()}; }
LVec4 operator+(const LVec4& a, const LVec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
LVec4 operator-(const LVec4& a, const LVec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
LVec4 operator*(double s, const LVec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

const char* to_string(Causal c) {
    switch (c) {
        case Causal::Spacelike: return "spacelike";
        case Causal::Timelike: return "timelike";
        case Causal::Lightlike: return "lightlike";
    }
    return "?";
}

double inner3(const LVec3& a, const LVec3& b) { return -a.t() * b.t() + a.x() * b.x() + a.y() * b.y(); }

double inner4(const LVec4& a, const LVec4& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

LVec3 cross_lorentz3(const LVec3& a, const LVec3& b) {
    // Euclidean cross product gives the cofactor vector; flip the time slot for the metric.
    const double e0 = a.x() * b.y() - a.y() * b.x();
    const double e1 = a.y() * b.t() - a.t() * b.y();
    const double e2 = a.t() * b.x() - a.x() * b.t();
    return {-e0, e1, e2};
}

LVec4 triple_normal4(const LVec4& p, const LVec4& q, const LVec4& r) {
    // Cofactors of the last row of det(p; q; r; c).
    std::array<double, 4> C{};
    for (int j = 0; j < 4; ++j) {
        std::array<double, 3> a{}, b{}, c{};
        for (int k = 0, m = 0; k < 4; ++k) {
            if (k == j) continue;
            a[m] = p[k];
            b[m] = q[k];
            c[m] = r[k];
            ++m;
        }
        const double sign = ((3 + j) % 2 == 0) ? 1.0 : -1.0;
        C[j] = sign * det3(a, b, c);
    }
    return {-C[0], C[1], C[2], C[3]};
}

CausalClass classify_value(double q, double tol) {
    if (!(tol >= 0)) throw DomainError("causal classification: tolerance must be >= 0");
    if (q > tol) return {Causal::Spacelike, tol};
    if (q < -tol) return {Causal::Timelike, tol};
    return {Causal::Lightlike, tol};
}

CausalClass causal_character(const LVec3& v, double tol) { return classify_value(inner3(v, v), tol); }
CausalClass causal_character(const LVec4& v, double tol) { return classify_value(inner4(v, v), tol); }

bool in_de_sitter(const LVec4& X, double tol) {
    if (!(tol >= 0)) throw DomainError("in_de_sitter: tolerance must be >= 0");
    return std::abs(inner4(X, X) - 1.0) <= tol;
}

std::vector<double> double_cone_map(double t, std::span<const double> P) {
    require_unit(P);
    std::vector<double> out;
    out.reserve(P.size() + 1);
    for (double p : P) out.push_back(t * p);
    out.push_back(t);
    return out;
}

std::vector<double> cone_map(double t, std::span<const double> P) {
    require_unit(P);
    const double t2 = t * t;
    std::vector<double> out;
    out.reserve(P.size() + 1);
    for (double p : P) out.push_back(t2 * p);
    out.push_back(t2);
    return out;
}

}  // namespace gcat::lorentz
