#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcat/surface.hpp"
#include "gcat/zoo_formulas.hpp"

namespace gcat::zoo {

const std::vector<Kind>& all_kinds();
std::string_view key(Kind k);           // "k", "e", ..., "le"
std::optional<Kind> kind_from_key(std::string_view s);
AmbientKind ambient(Kind k);
bool takes_mu(Kind k);
bool takes_nu(Kind k);
std::string param_range(Kind k);  // human-readable admissible range

class FamilyId {
public:
    // Validates the parameter; families without one ignore `param`.
    FamilyId(Kind k, double param = 0);

    Kind kind() const { return kind_; }
    double param() const { return param_; }
    std::string key() const { return std::string(zoo::key(kind_)); }
    std::string label() const;  // e.g. "se(mu=2)"

    friend bool operator==(const FamilyId&, const FamilyId&) = default;

private:
    Kind kind_;
    double param_;
};

// Parse "te" with optional --mu/--nu values; throws UnknownFamily or DomainError.
FamilyId parse_family(std::string_view key, std::optional<double> mu, std::optional<double> nu);

// Formatting shared by labels and reports: shortest round-trip decimal.
std::string format_real(double x);

// ---- surfaces

Coords eval_surface(const FamilyId& id, double u, double v);
Surface surface(const FamilyId& id);
Domain domain(Kind k);
// Default sampling box; angular axes are half-open.
Grid default_grid(Kind k, int nu, int nv);

enum class Implicit { E, P, H, KGraph, LEGraph };
const char* to_string(Implicit i);
double implicit_residual(Implicit which, const Coords& point);
Quad implicit_residual_quad(Implicit which, const CoordsT<Quad>& point);
std::optional<Implicit> implicit_of(Kind k);

struct SurfaceSpec {
    FamilyId id;
    Surface surface;
    Grid sampling;  // 64x64 default box
    std::string axis;
    std::string singular_set;
    std::string limit_set;
    std::function<Coords(double)> profile;  // empty when none is defined
    std::optional<Implicit> implicit;
    bool has_extension = false;
};

SurfaceSpec spec(const FamilyId& id);

// ---- extension surfaces

bool has_extension(Kind k);

// (xi, eta, theta) for S-types, (xi, x, v) for L-types, (xi, eta, s) for T-types.
struct XPoint {
    std::array<double, 3> x{};
    double residual = 0;
};

double x_residual(const FamilyId& id, const std::array<double, 3>& x);
double x_residual_scale(const FamilyId& id, const std::array<double, 3>& x);
XPoint make_xpoint(const FamilyId& id, const std::array<double, 3>& x);

XPoint xi_eta(const FamilyId& id, double s, double th);
// Requires |residual| <= 1e-8 * max(1, scale of the equation's terms).
Coords eval_extension(const FamilyId& id, const XPoint& p);
Coords reflected_surface(const FamilyId& id, double s, double th);
Coords reflect(const Coords& c);  // diag(-1,1,1,-1)

// Light-like line base + t*dir; x_base/x_dir give the same line on the extension surface.
struct LimitLine {
    std::string label;
    Coords base{}, dir{};
    std::array<double, 3> x_base{}, x_dir{};
    int index = 0;  // line id used by classification (k, or +1/-1 for LH)
};

// Lines with |k| <= kmax for families with infinitely many.
std::vector<LimitLine> limit_lines(const FamilyId& id, int kmax = 2);
bool has_limit_set(Kind k);
// n points per line on t in [-2, 2].
std::vector<Coords> limit_set_sample(const FamilyId& id, int n, int kmax = 2);

// ---- profile regularity

struct Regularity {
    double identity_residual = 0;
    double speed = 0;
};
bool has_regularity_identity(Kind k);
Regularity profile_regularity_residual(const FamilyId& id, double s);

// ---- singular sets

// Parameter line {axis-coordinate = value}; the other coordinate runs over [lo, hi].
struct SingularComponent {
    std::string label;
    int fixed_axis = 0;  // 0: u fixed, 1: v fixed
    double value = 0;
    double lo = -3, hi = 3;
    std::optional<Coords> image;  // collapse point when the component collapses
    bool exact = false;           // image expected bit-for-bit
    // Compare relative to 1+|image|: for TH the points grow like cosh(s_k/nu)
    // and the singular parameter itself is rounded.
    bool relative = false;
};

std::vector<SingularComponent> singular_components(const FamilyId& id, int kmax = 2);

// ---- cone points

enum class DefiningSpace { Ambient, Extension };

struct DCPoint {
    std::string label;
    std::array<double, 3> p{};
};

DefiningSpace defining_space(Kind k);
// Implicit companion (R31) or extension-surface equation (S31) as a function of three reals.
template <class T>
T defining_function(const FamilyId& id, const std::array<T, 3>& q) {
    using namespace formulas;
    switch (id.kind()) {
        case Kind::E: return F_E<T>({q[0], q[1], q[2], T(0)});
        case Kind::P: return F_P<T>({q[0], q[1], q[2], T(0)});
        case Kind::H: return F_H<T>({q[0], q[1], q[2], T(0)});
        case Kind::K: return F_Kgraph<T>({q[0], q[1], q[2], T(0)});
        default: return formulas::x_residual<T>(id.kind(), id.param(), q);
    }
}
std::vector<DCPoint> dc_points(const FamilyId& id, int kmax = 2);

}  // namespace gcat::zoo
