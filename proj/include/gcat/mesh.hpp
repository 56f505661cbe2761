#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gcat/curvature.hpp"
#include "gcat/surface.hpp"
#include "gcat/zoo.hpp"

namespace gcat::mesh {

enum class Marker : std::uint8_t { Regular, NearSingular };
const char* to_string(Marker m);

struct Mesh {
    int dim = 3;                                // 3 for R31 families, 4 for S31
    std::vector<std::array<double, 4>> vertices;  // unused trailing entries are 0
    std::vector<std::array<int, 3>> faces;       // 0-based
    std::vector<Marker> markers;
    std::vector<std::array<double, 2>> params;   // (u, v) of each vertex
};

// Vertices row-major over the grid (u outer). Periodic axes are sampled
// half-open and no faces close the seam.
Mesh sample_mesh(const zoo::FamilyId& id, const Grid& grid, double degenerate_tol = 1e-12,
                 curvature::DiffSpec how = curvature::DiffSpec::dual());

// Throws ResidualViolation if some S31 vertex is off de Sitter space.
void check_de_sitter(const Mesh& m, double tol = 1e-9);

// proj: which ambient coordinates become (x, y, z).
void write_obj(std::ostream& os, const Mesh& m, std::array<int, 3> proj, const std::vector<std::string>& header);
void write_markers_csv(std::ostream& os, const Mesh& m);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t h);

}  // namespace gcat::mesh
