#include "gcat/mesh.hpp"

#include <cmath>
#include <ostream>

#include "gcat/curvature.hpp"
#include "gcat/errors.hpp"
#include "gcat/lorentz.hpp"

namespace gcat::mesh {

const char* to_string(Marker m) { return m == Marker::Regular ? "regular" : "near_singular"; }

namespace {

double axis_distance(const Axis& ax, double a, double b) {
    double d = std::abs(a - b);
    if (ax.periodic) {
        const double period = ax.hi - ax.lo;
        d = std::fmod(d, period);
        d = std::min(d, period - d);
    }
    return d;
}

bool near_component(const zoo::SingularComponent& c, const Domain& dom, const Grid& g, double u, double v) {
    const double step_u = g.u.step(), step_v = g.v.step();
    const double fixed = c.fixed_axis == 0 ? u : v, free = c.fixed_axis == 0 ? v : u;
    const double step = c.fixed_axis == 0 ? step_u : step_v;
    const double free_step = c.fixed_axis == 0 ? step_v : step_u;
    const Axis& ax = c.fixed_axis == 0 ? dom.u : dom.v;
    return axis_distance(ax, fixed, c.value) <= step * (1 + 1e-12) && free >= c.lo - free_step &&
           free <= c.hi + free_step;
}

}  // namespace

Mesh sample_mesh(const zoo::FamilyId& id, const Grid& grid, double degenerate_tol, curvature::DiffSpec how) {
    if (grid.u.n < 2 || grid.v.n < 2) throw ConfigError("grid", "each grid dimension must be >= 2");
    const Surface s = zoo::surface(id);
    const Domain dom = zoo::domain(id.kind());
    const auto comps = zoo::singular_components(id);
    Mesh m;
    m.dim = ambient_dim(s.kind());
    m.vertices.reserve(grid.size());
    for (int i = 0; i < grid.u.n; ++i) {
        const double u = grid.u.at(i);
        for (int j = 0; j < grid.v.n; ++j) {
            const double v = grid.v.at(j);
            const Coords c = s(u, v);
            m.vertices.push_back(c);
            m.params.push_back({u, v});
            bool near = false;
            for (const auto& comp : comps) near = near || near_component(comp, dom, grid, u, v);
            if (!near) {
                try {
                    const auto ff = curvature::fund_forms(curvature::jet2(s, u, v, how));
                    near = !(std::abs(ff.B) > degenerate_tol);
                } catch (const Error&) {
                    near = true;
                }
            }
            m.markers.push_back(near ? Marker::NearSingular : Marker::Regular);
        }
    }
    const int nv = grid.v.n;
    for (int i = 0; i + 1 < grid.u.n; ++i)
        for (int j = 0; j + 1 < nv; ++j) {
            const int a = i * nv + j, b = a + 1, c = a + nv, d = c + 1;
            m.faces.push_back({a, c, d});
            m.faces.push_back({a, d, b});
        }
    return m;
}

void check_de_sitter(const Mesh& m, double tol) {
    if (m.dim != 4) return;
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        const auto& x = m.vertices[i];
        const lorentz::LVec4 X(x[0], x[1], x[2], x[3]);
        const double scale = std::max(1.0, x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        if (!lorentz::in_de_sitter(X, tol * scale))
            throw ResidualViolation("vertex " + std::to_string(i) + " is off de Sitter space",
                                    std::abs(lorentz::inner4(X, X) - 1.0));
    }
}

void write_obj(std::ostream& os, const Mesh& m, std::array<int, 3> proj, const std::vector<std::string>& header) {
    for (int p : proj)
        if (p < 0 || p >= m.dim) throw ConfigError("proj", "coordinate index out of range");
    for (const auto& h : header) os << "# " << h << '\n';
    for (const auto& x : m.vertices)
        os << "v " << zoo::format_real(x[proj[0]]) << ' ' << zoo::format_real(x[proj[1]]) << ' '
           << zoo::format_real(x[proj[2]]) << '\n';
    for (const auto& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_markers_csv(std::ostream& os, const Mesh& m) {
    os << "index,u,v,marker\n";
    for (std::size_t i = 0; i < m.vertices.size(); ++i)
        os << i + 1 << ',' << zoo::format_real(m.params[i][0]) << ',' << zoo::format_real(m.params[i][1]) << ','
           << to_string(m.markers[i]) << '\n';
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 15];
    return out;
}

}  // namespace gcat::mesh
