#pragma once

#include <array>
#include <span>
#include <vector>

namespace gcat::lorentz {

constexpr double kDefaultCausalTol = 1e-10;

// Point or vector of R^3_1, metric diag(-1,1,1), order (t,x,y).
class LVec3 {
public:
    LVec3() = default;
    LVec3(double t, double x, double y);
    explicit LVec3(const std::array<double, 3>& c) : LVec3(c[0], c[1], c[2]) {}

    double t() const { return c_[0]; }
    double x() const { return c_[1]; }
    double y() const { return c_[2]; }
    double operator[](int i) const { return c_[i]; }
    const std::array<double, 3>& coords() const { return c_; }

    friend bool operator==(const LVec3&, const LVec3&) = default;

private:
    std::array<double, 3> c_{};
};

// Point or vector of R^4_1, metric diag(-1,1,1,1).
class LVec4 {
public:
    LVec4() = default;
    LVec4(double x0, double x1, double x2, double x3);
    explicit LVec4(const std::array<double, 4>& c) : LVec4(c[0], c[1], c[2], c[3]) {}

    double x0() const { return c_[0]; }
    double x1() const { return c_[1]; }
    double x2() const { return c_[2]; }
    double x3() const { return c_[3]; }
    double operator[](int i) const { return c_[i]; }
    const std::array<double, 4>& coords() const { return c_; }

    friend bool operator==(const LVec4&, const LVec4&) = default;

private:
    std::array<double, 4> c_{};
};

LVec3 operator+(const LVec3& a, const LVec3& b);
LVec3 operator-(const LVec3& a, const LVec3& b);
LVec3 operator*(double s, const LVec3& a);
LVec4 operator+(const LVec4& a, const LVec4& b);
LVec4 operator-(const LVec4& a, const LVec4& b);
LVec4 operator*(double s, const LVec4& a);

enum class Causal { Spacelike, Timelike, Lightlike };

struct CausalClass {
    Causal tag;
    double tolerance;
    friend bool operator==(const CausalClass&, const CausalClass&) = default;
};

const char* to_string(Causal c);

double inner3(const LVec3& a, const LVec3& b);
double inner4(const LVec4& a, const LVec4& b);

// inner3(cross_lorentz3(a,b), c) == det(a; b; c) for every c.
LVec3 cross_lorentz3(const LVec3& a, const LVec3& b);

// inner4(triple_normal4(p,q,r), c) == det(p; q; r; c) for every c.
LVec4 triple_normal4(const LVec4& p, const LVec4& q, const LVec4& r);

// Sign trichotomy of a quadratic-form value.
CausalClass classify_value(double q, double tol);
CausalClass causal_character(const LVec3& v, double tol = kDefaultCausalTol);
CausalClass causal_character(const LVec4& v, double tol = kDefaultCausalTol);

bool in_de_sitter(const LVec4& X, double tol);

// (t,P) -> (tP, t) and (t,P) -> (t^2 P, t^2); P must be a unit vector (1e-12).
std::vector<double> double_cone_map(double t, std::span<const double> P);
std::vector<double> cone_map(double t, std::span<const double> P);

}  // namespace gcat::lorentz
