#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "gcat/dual.hpp"
#include "gcat/quad.hpp"

namespace gcat {

enum class AmbientKind { R31, S31 };

inline int ambient_dim(AmbientKind k) { return k == AmbientKind::R31 ? 3 : 4; }
inline const char* to_string(AmbientKind k) { return k == AmbientKind::R31 ? "R31" : "S31"; }

// Ambient coordinates; R31 points use the first three slots and keep slot 3 at 0.
template <class T>
using CoordsT = std::array<T, 4>;
using Coords = CoordsT<double>;

// One parameter axis: a closed interval, or a half-open period [lo, hi) when periodic.
struct Axis {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool periodic = false;
    bool open_lo = false, open_hi = false;

    bool contains(double x) const;
};

struct Domain {
    Axis u, v;
    bool contains(double a, double b) const { return u.contains(a) && v.contains(b); }
};

// Sampling axis: n points on [lo, hi], or on [lo, hi) when half_open.
struct GridAxis {
    double lo = 0, hi = 1;
    int n = 2;
    bool half_open = false;

    double step() const { return half_open ? (hi - lo) / n : (n > 1 ? (hi - lo) / (n - 1) : 0.0); }
    double at(int i) const { return lo + step() * i; }
};

struct Grid {
    GridAxis u, v;
    std::size_t size() const { return std::size_t(u.n) * std::size_t(v.n); }
};

// Parametrized surface with evaluators over double, jets and binary128.
class Surface {
public:
    using FnD = std::function<CoordsT<double>(double, double)>;
    using FnJ = std::function<CoordsT<Dual2<double>>(const Dual2<double>&, const Dual2<double>&)>;
    using FnQ = std::function<CoordsT<Quad>(const Quad&, const Quad&)>;

    Surface() = default;
    Surface(std::string name, AmbientKind kind, Domain dom, FnD f, FnJ fj, FnQ fq)
        : name_(std::move(name)), kind_(kind), dom_(dom), f_(std::move(f)), fj_(std::move(fj)), fq_(std::move(fq)) {}

    // Instantiate one generic closed form for all three scalar types.
    template <class G>
    static Surface from_generic(std::string name, AmbientKind kind, Domain dom, G g) {
        return Surface(
            std::move(name), kind, dom, [g](double u, double v) { return g(u, v); },
            [g](const Dual2<double>& u, const Dual2<double>& v) { return g(u, v); },
            [g](const Quad& u, const Quad& v) { return g(u, v); });
    }

    const std::string& name() const { return name_; }
    AmbientKind kind() const { return kind_; }
    const Domain& domain() const { return dom_; }

    Coords operator()(double u, double v) const { return f_(u, v); }
    CoordsT<Dual2<double>> jet(const Dual2<double>& u, const Dual2<double>& v) const { return fj_(u, v); }
    CoordsT<Quad> quad(const Quad& u, const Quad& v) const { return fq_(u, v); }

private:
    std::string name_;
    AmbientKind kind_ = AmbientKind::R31;
    Domain dom_;
    FnD f_;
    FnJ fj_;
    FnQ fq_;
};

template <class T>
T ambient_inner(AmbientKind k, const CoordsT<T>& a, const CoordsT<T>& b) {
    T s = -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    if (k == AmbientKind::S31) s += a[3] * b[3];
    return s;
}

}  // namespace gcat
