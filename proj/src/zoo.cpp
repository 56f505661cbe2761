#include "gcat/zoo.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "gcat/errors.hpp"

namespace gcat::zoo {

namespace {

using namespace formulas;
constexpr double kPi = std::numbers::pi;

const Domain kPlane{};
const Domain kCylinder{Axis{}, Axis{0.0, 2 * kPi, true}};

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

double norm2(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

const std::vector<Kind>& all_kinds() {
    static const std::vector<Kind> v{Kind::K,  Kind::E,  Kind::P,  Kind::H,  Kind::TE, Kind::TP,
                                     Kind::TH, Kind::SE, Kind::SH, Kind::SP, Kind::LH, Kind::LE};
    return v;
}

std::string_view key(Kind k) {
    switch (k) {
        case Kind::K: return "k";
        case Kind::E: return "e";
        case Kind::P: return "p";
        case Kind::H: return "h";
        case Kind::TE: return "te";
        case Kind::TP: return "tp";
        case Kind::TH: return "th";
        case Kind::SE: return "se";
        case Kind::SH: return "sh";
        case Kind::SP: return "sp";
        case Kind::LH: return "lh";
        case Kind::LE: return "le";
    }
    return "?";
}

std::optional<Kind> kind_from_key(std::string_view s) {
    for (Kind k : all_kinds())
        if (key(k) == s) return k;
    return std::nullopt;
}

AmbientKind ambient(Kind k) {
    switch (k) {
        case Kind::K:
        case Kind::E:
        case Kind::P:
        case Kind::H: return AmbientKind::R31;
        default: return AmbientKind::S31;
    }
}

bool takes_mu(Kind k) { return k == Kind::TE || k == Kind::SE; }
bool takes_nu(Kind k) { return k == Kind::TH || k == Kind::SH; }

std::string param_range(Kind k) {
    switch (k) {
        case Kind::TE: return "mu > 0, mu != 1";
        case Kind::SE: return "mu real, mu != 0, |mu| != 1";
        case Kind::TH: return "nu > 0, nu != 1";
        case Kind::SH: return "nu > 0";
        default: return "-";
    }
}

FamilyId::FamilyId(Kind k, double param) : kind_(k), param_(param) {
    if (!takes_mu(k) && !takes_nu(k)) {
        param_ = 0;
        return;
    }
    const char* name = takes_mu(k) ? "mu" : "nu";
    if (!std::isfinite(param)) throw DomainError(std::string(name) + " must be finite");
    bool ok = true;
    switch (k) {
        case Kind::TE:
        case Kind::TH: ok = param > 0 && param != 1; break;
        case Kind::SE: ok = param != 0 && std::abs(param) != 1; break;
        case Kind::SH: ok = param > 0; break;
        default: break;
    }
    if (!ok) throw DomainError(std::string(zoo::key(k)) + ": " + name + "=" + format_real(param) + " outside " + param_range(k));
}

std::string FamilyId::label() const {
    if (takes_mu(kind_)) return key() + "(mu=" + format_real(param_) + ")";
    if (takes_nu(kind_)) return key() + "(nu=" + format_real(param_) + ")";
    return key();
}

FamilyId parse_family(std::string_view s, std::optional<double> mu, std::optional<double> nu) {
    const auto k = kind_from_key(s);
    if (!k) throw UnknownFamily("unknown family '" + std::string(s) + "'");
    if (takes_mu(*k)) {
        if (!mu) throw DomainError(std::string(s) + " requires mu");
        return FamilyId(*k, *mu);
    }
    if (takes_nu(*k)) {
        if (!nu) throw DomainError(std::string(s) + " requires nu");
        return FamilyId(*k, *nu);
    }
    return FamilyId(*k);
}

std::string format_real(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

// ---- surfaces

Coords eval_surface(const FamilyId& id, double u, double v) {
    check_finite(u, "eval_surface");
    check_finite(v, "eval_surface");
    return formulas::eval<double>(id.kind(), id.param(), u, v);
}

Domain domain(Kind k) {
    switch (k) {
        case Kind::K:
        case Kind::E:
        case Kind::TE:
        case Kind::TP:
        case Kind::TH: return kCylinder;
        default: return kPlane;
    }
}

Surface surface(const FamilyId& id) {
    const Kind k = id.kind();
    const double p = id.param();
    return Surface::from_generic(id.label(), ambient(k), domain(k),
                                 [k, p](const auto& u, const auto& v) { return formulas::eval(k, p, u, v); });
}

Grid default_grid(Kind k, int nu, int nv) {
    const GridAxis s{-3, 3, nu, false};
    const GridAxis ang{0, 2 * kPi, nv, true};
    switch (k) {
        case Kind::P: return {s, {-3, 3, nv, false}};
        case Kind::H: return {s, {-4, 4, nv, false}};
        default: return {s, ang};
    }
}

const char* to_string(Implicit i) {
    switch (i) {
        case Implicit::E: return "E";
        case Implicit::P: return "P";
        case Implicit::H: return "H";
        case Implicit::KGraph: return "K-graph";
        case Implicit::LEGraph: return "LE-graph";
    }
    return "?";
}

template <class T>
static T implicit_t(Implicit which, const CoordsT<T>& q) {
    switch (which) {
        case Implicit::E: return F_E(q);
        case Implicit::P: return F_P(q);
        case Implicit::H: return F_H(q);
        case Implicit::KGraph: return F_Kgraph(q);
        case Implicit::LEGraph: return F_LEgraph(q);
    }
    return T(0);
}

double implicit_residual(Implicit which, const Coords& point) { return implicit_t<double>(which, point); }
Quad implicit_residual_quad(Implicit which, const CoordsT<Quad>& point) { return implicit_t<Quad>(which, point); }

std::optional<Implicit> implicit_of(Kind k) {
    switch (k) {
        case Kind::K: return Implicit::KGraph;
        case Kind::E: return Implicit::E;
        case Kind::P: return Implicit::P;
        case Kind::H: return Implicit::H;
        case Kind::LE: return Implicit::LEGraph;
        default: return std::nullopt;
    }
}

SurfaceSpec spec(const FamilyId& id) {
    const Kind k = id.kind();
    SurfaceSpec sp{id, surface(id), default_grid(k, 64, 64), "", "", "", {}, implicit_of(k), has_extension(k)};
    const double p = id.param();
    switch (k) {
        case Kind::K:
            sp.axis = "t-axis";
            sp.singular_set = "fold lines v = 0, pi";
            sp.limit_set = "none";
            break;
        case Kind::E:
            sp.axis = "t-axis";
            sp.singular_set = "u = 0, image the origin (cone point)";
            sp.limit_set = "none";
            break;
        case Kind::P:
            sp.axis = "light-like line t = -x, y = 0";
            sp.singular_set = "v = 0, image the origin";
            sp.limit_set = "the axis {(t,-t,0)}";
            break;
        case Kind::H:
            sp.axis = "x-axis";
            sp.singular_set = "v = n pi, images (0, n pi, 0)";
            sp.limit_set = "none";
            break;
        case Kind::TE:
        case Kind::TP:
            sp.axis = "{(sinh t, 0, 0, +-cosh t)}";
            sp.singular_set = "s = 0, image (0,0,0,1)";
            sp.limit_set = "none";
            break;
        case Kind::TH:
            sp.axis = "{(sinh t, 0, 0, +-cosh t)}";
            sp.singular_set = "s = pi/2 + k pi, images ((-1)^k sinh(s_k/nu), 0, 0, (-1)^k cosh(s_k/nu))";
            sp.limit_set = "{x0 = x3} and {x0 = -x3} in S31";
            break;
        case Kind::SE:
            sp.axis = "{(0, cos t, sin t, 0)}";
            sp.singular_set = "cos(mu theta) = 0, each line collapses to (0, gamma(theta_k), 0)";
            sp.limit_set = "lines (u, gamma(theta_k), +-u)";
            break;
        case Kind::SH:
            sp.axis = "{(0, cos t, sin t, 0)}";
            sp.singular_set = "theta = 0, image (0,0,-1,0)";
            sp.limit_set = "lines (u, 0, -1, +-u)";
            break;
        case Kind::SP:
            sp.axis = "{(0, cos t, sin t, 0)}";
            sp.singular_set = "theta = 0, image (0,0,1,0)";
            sp.limit_set = "lines (u, 0, 1, +-u)";
            break;
        case Kind::LH:
            sp.axis = "{(t, 0, +-1, t)}";
            sp.singular_set = "2v = 0 mod pi, each line collapses to one point";
            sp.limit_set = "lines (t, 0, +-1, t)";
            break;
        case Kind::LE:
            sp.axis = "{(t, 0, +-1, t)}";
            sp.singular_set = "v = 0, image (0,0,1,0)";
            sp.limit_set = "line (t, 0, 1, t)";
            break;
    }
    if (is_t_type(k))
        sp.profile = [k, p](double s) { return formulas::eval<double>(k, p, s, 0.0); };
    else if (is_s_type(k) || is_l_type(k))
        sp.profile = [k, p](double th) { return formulas::eval<double>(k, p, 0.0, th); };
    return sp;
}

// ---- extension surfaces

bool has_extension(Kind k) { return ambient(k) == AmbientKind::S31; }

static void require_extension(const FamilyId& id, const char* op) {
    if (!has_extension(id.kind())) throw DomainError(std::string(op) + ": " + id.label() + " has no extension surface");
}

double x_residual(const FamilyId& id, const std::array<double, 3>& x) {
    require_extension(id, "x_residual");
    return formulas::x_residual<double>(id.kind(), id.param(), x);
}

double x_residual_scale(const FamilyId& id, const std::array<double, 3>& x) {
    require_extension(id, "x_residual_scale");
    return formulas::x_residual_scale<double>(id.kind(), id.param(), x);
}

XPoint make_xpoint(const FamilyId& id, const std::array<double, 3>& x) { return {x, x_residual(id, x)}; }

XPoint xi_eta(const FamilyId& id, double s, double th) {
    require_extension(id, "xi_eta");
    check_finite(s, "xi_eta");
    check_finite(th, "xi_eta");
    return make_xpoint(id, formulas::to_x<double>(id.kind(), id.param(), s, th));
}

Coords eval_extension(const FamilyId& id, const XPoint& p) {
    require_extension(id, "eval_extension");
    for (double c : p.x) check_finite(c, "eval_extension");
    const double r = x_residual(id, p.x);
    const double scale = std::max(1.0, x_residual_scale(id, p.x));
    if (std::abs(r) > 1e-8 * scale) throw ResidualViolation("eval_extension: point is off the extension surface", r);
    return formulas::embed<double>(id.kind(), id.param(), p.x);
}

Coords reflect(const Coords& c) { return {-c[0], c[1], c[2], -c[3]}; }

Coords reflected_surface(const FamilyId& id, double s, double th) {
    if (!is_s_type(id.kind())) throw DomainError("reflected_surface: only SE, SH, SP carry a reflected map");
    return reflect(eval_surface(id, s, th));
}

bool has_limit_set(Kind k) { return k == Kind::P || k == Kind::TH || is_s_type(k) || is_l_type(k); }

std::vector<LimitLine> limit_lines(const FamilyId& id, int kmax) {
    const Kind k = id.kind();
    const double p = id.param();
    std::vector<LimitLine> out;
    auto s_pair = [&](double th, int index, const std::string& name) {
        const auto pr = s_profile<double>(k, p, th);
        out.push_back({name + "+", {0, pr.x1, pr.x2, 0}, {1, 0, 0, 1}, {0, 0, th}, {2, 0, 0}, index});
        out.push_back({name + "-", {0, pr.x1, pr.x2, 0}, {1, 0, 0, -1}, {0, 0, th}, {0, 2, 0}, index});
    };
    switch (k) {
        case Kind::SE:
            for (int j = -kmax; j <= kmax; ++j) s_pair((kPi / 2 + j * kPi) / p, j, "L" + std::to_string(j));
            break;
        case Kind::SH:
        case Kind::SP: s_pair(0.0, 0, "L"); break;
        case Kind::LH:
            out.push_back({"L+", {0, 0, 1, 0}, {1, 0, 0, 1}, {0, 0, 0}, {2, 0, 0}, +1});
            out.push_back({"L-", {0, 0, -1, 0}, {1, 0, 0, 1}, {0, 0, kPi / 2}, {2, 0, 0}, -1});
            break;
        case Kind::LE: out.push_back({"L", {0, 0, 1, 0}, {1, 0, 0, 1}, {0, 0, 0}, {2, 0, 0}, 0}); break;
        case Kind::TH:
            // Ruled by light-like lines (t, cos a, sin a, +-t); not carried by the extension surface.
            for (int j = 0; j < 8; ++j) {
                const double a = 2 * kPi * j / 8;
                out.push_back({"L+" + std::to_string(j), {0, std::cos(a), std::sin(a), 0}, {1, 0, 0, 1}, {}, {}, j});
                out.push_back({"L-" + std::to_string(j), {0, std::cos(a), std::sin(a), 0}, {1, 0, 0, -1}, {}, {}, j});
            }
            break;
        case Kind::P: out.push_back({"axis", {0, 0, 0, 0}, {1, -1, 0, 0}, {}, {}, 0}); break;
        default: throw EmptyLimitSet("limit set of " + id.label() + " is empty");
    }
    return out;
}

std::vector<Coords> limit_set_sample(const FamilyId& id, int n, int kmax) {
    if (n < 1) throw DomainError("limit_set_sample: n must be >= 1");
    std::vector<Coords> out;
    for (const auto& L : limit_lines(id, kmax)) {
        for (int i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : -2.0 + 4.0 * i / (n - 1);
            Coords c{};
            for (int j = 0; j < 4; ++j) c[j] = L.base[j] + t * L.dir[j];
            out.push_back(c);
        }
    }
    return out;
}

// ---- profile regularity

bool has_regularity_identity(Kind k) { return is_t_type(k) || k == Kind::SE || k == Kind::SH; }

Regularity profile_regularity_residual(const FamilyId& id, double s) {
    check_finite(s, "profile_regularity_residual");
    using D = Dual2<double>;
    const D sd = D::var_u(s);
    const Kind k = id.kind();
    const double p = id.param();
    double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
    switch (k) {
        case Kind::TE: {
            const auto pr = profile_TE(p, sd);
            l0 = pr.x0.u;
            l1 = pr.x3.u;
            const double c = half_ratio_minus(p), a = -p * std::cosh(p * s), b = std::sinh(p * s);
            r0 = c * (std::cosh(s) * a + std::sinh(s) * b);
            r1 = c * (std::sinh(s) * a + std::cosh(s) * b);
            break;
        }
        case Kind::TP: {
            const auto pr = profile_TP(sd);
            l0 = pr.x0.u;
            l1 = pr.x3.u;
            r0 = 0.5 * (std::cosh(s) - s * std::sinh(s));
            r1 = 0.5 * (std::sinh(s) - s * std::cosh(s));
            break;
        }
        case Kind::TH: {
            const auto pr = profile_TH(p, sd);
            l0 = pr.x0.u;
            l1 = pr.x3.u;
            const double f = (p * p + 1) / (2 * p * p), a = std::cos(s), b = p * std::sin(s);
            const double sh = std::sinh(s / p), ch = std::cosh(s / p);
            r0 = f * (sh * a + ch * b);
            r1 = f * (ch * a + sh * b);
            break;
        }
        case Kind::SE: {
            const auto pr = profile_SE(p, sd);
            l0 = pr.x1.u;
            l1 = pr.x2.u;
            const double c = half_ratio_minus(p), a = p * std::sin(p * s), b = std::cos(p * s);
            r0 = c * (std::cos(s) * a - std::sin(s) * b);
            r1 = c * (std::sin(s) * a + std::cos(s) * b);
            break;
        }
        case Kind::SH: {
            const auto pr = profile_SH(p, sd);
            l0 = pr.x1.u;
            l1 = pr.x2.u;
            const double d = half_ratio_plus(p), a = p * std::cosh(p * s), b = -std::sinh(p * s);
            r0 = d * (std::cos(s) * a - std::sin(s) * b);
            r1 = d * (std::sin(s) * a + std::cos(s) * b);
            break;
        }
        default: throw DomainError("profile_regularity_residual: no regularity identity for " + id.label());
    }
    return {norm2(l0 - r0, l1 - r1), norm2(l0, l1)};
}

// ---- singular sets

std::vector<SingularComponent> singular_components(const FamilyId& id, int kmax) {
    const Kind k = id.kind();
    const double p = id.param();
    std::vector<SingularComponent> out;
    const double two_pi = 2 * kPi;
    switch (k) {
        case Kind::K:
            out.push_back({"v=0", 1, 0.0, -3, 3, std::nullopt, false});
            out.push_back({"v=pi", 1, kPi, -3, 3, std::nullopt, false});
            break;
        case Kind::E: out.push_back({"u=0", 0, 0.0, 0, two_pi, Coords{0, 0, 0, 0}, true}); break;
        case Kind::P: out.push_back({"v=0", 1, 0.0, -3, 3, Coords{0, 0, 0, 0}, true}); break;
        case Kind::H:
            for (int n = -kmax; n <= kmax; ++n)
                out.push_back({"v=" + std::to_string(n) + "pi", 1, n * kPi, -3, 3, Coords{0, n * kPi, 0, 0}, n == 0});
            break;
        case Kind::TE:
        case Kind::TP: out.push_back({"s=0", 0, 0.0, 0, two_pi, Coords{0, 0, 0, 1}, true}); break;
        case Kind::TH:
            for (int j = -kmax; j <= kmax; ++j) {
                const double sk = kPi / 2 + j * kPi, sg = (j % 2 == 0) ? 1.0 : -1.0;
                out.push_back({"s=pi/2+" + std::to_string(j) + "pi", 0, sk, 0, two_pi,
                               Coords{sg * std::sinh(sk / p), 0, 0, sg * std::cosh(sk / p)}, false, true});
            }
            break;
        case Kind::SE:
            for (int j = -kmax; j <= kmax; ++j) {
                const double th = (kPi / 2 + j * kPi) / p;
                const auto pr = profile_SE<double>(p, th);
                out.push_back({"theta_" + std::to_string(j), 1, th, -3, 3, Coords{0, pr.x1, pr.x2, 0}, false});
            }
            break;
        case Kind::SH: out.push_back({"theta=0", 1, 0.0, -3, 3, Coords{0, 0, -1, 0}, true}); break;
        case Kind::SP: out.push_back({"theta=0", 1, 0.0, -3, 3, Coords{0, 0, 1, 0}, true}); break;
        case Kind::LH:
            for (int j = -kmax; j <= kmax; ++j) {
                const double v0 = j * kPi / 2, e = (j % 2 == 0) ? 1.0 : -1.0;
                out.push_back({"v=" + std::to_string(j) + "pi/2", 1, v0, -3, 3, Coords{e * v0, 0, e, e * v0}, j == 0});
            }
            break;
        case Kind::LE: out.push_back({"v=0", 1, 0.0, -3, 3, Coords{0, 0, 1, 0}, true}); break;
    }
    return out;
}

// ---- cone points

DefiningSpace defining_space(Kind k) {
    return ambient(k) == AmbientKind::R31 ? DefiningSpace::Ambient : DefiningSpace::Extension;
}

std::vector<DCPoint> dc_points(const FamilyId& id, int kmax) {
    const Kind k = id.kind();
    const double p = id.param();
    std::vector<DCPoint> out;
    switch (k) {
        case Kind::K: break;
        case Kind::E:
        case Kind::P:
        case Kind::TE:
        case Kind::TP:
        case Kind::SH:
        case Kind::SP:
        case Kind::LE: out.push_back({"origin", {0, 0, 0}}); break;
        case Kind::H:
            for (int n = -kmax; n <= kmax; ++n) out.push_back({"(0," + std::to_string(n) + "pi,0)", {0, n * kPi, 0}});
            break;
        case Kind::TH:
            for (int j = -kmax; j <= kmax; ++j) out.push_back({"s_" + std::to_string(j), {0, 0, kPi / 2 + j * kPi}});
            break;
        case Kind::SE:
            for (int j = -kmax; j <= kmax; ++j) out.push_back({"theta_" + std::to_string(j), {0, 0, (kPi / 2 + j * kPi) / p}});
            break;
        case Kind::LH:
            for (int j = -kmax; j <= kmax; ++j) {
                const double v0 = j * kPi / 2, e = (j % 2 == 0) ? 1.0 : -1.0;
                out.push_back({"v=" + std::to_string(j) + "pi/2", {2 * e * v0, 0, v0}});
            }
            break;
    }
    return out;
}

}  // namespace gcat::zoo
