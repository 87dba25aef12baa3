// formfactor/shapes.hpp
#pragma once

#include "formfactor/mesh.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ff::shapes {

enum class ShapeKind {
    regular_polygon,
    box,
    regular_prism,
    pyramid_frustum,
    tetrahedron,
    cube,
    octahedron,
    dodecahedron,
    icosahedron,
    cuboctahedron,
    truncated_cube,
    truncated_tetrahedron_fig,
};

[[nodiscard]] std::string to_string(ShapeKind k);
[[nodiscard]] std::optional<ShapeKind> kind_from_string(const std::string& s);

/// Shape kind plus named parameters. Recognized keys:
///   edge (L, nm), width (second base edge for fold 2, nm), height (H, nm),
///   alpha (dihedral angle, degrees), fold (J), lx/ly/lz (box extents, nm).
struct ShapeSpec {
    ShapeKind kind = ShapeKind::cube;
    std::map<std::string, double> params;

    [[nodiscard]] double get(const std::string& key, double fallback) const;
    [[nodiscard]] std::string label() const;
};

using Figure = std::variant<VertexChain, PolyhedronMesh>;

/// Builds and validates the figure. Throws InvalidSpec.
[[nodiscard]] Figure make(const ShapeSpec& spec);

/// Regular J-gon of edge L in the z = 0 plane, centered at the origin, with
/// vertex k at angle phase + 2 pi k / J. The default phase puts an edge
/// normal to the x axis.
[[nodiscard]] VertexChain regular_polygon(int J, double L, std::optional<double> phase = std::nullopt);

/// Equilateral triangle, edge L along x, in the z = 0 plane, centered.
[[nodiscard]] VertexChain triangle_edge_along_x(double L = 1.0);

/// Frustum of a pyramid with regular J-gon base in z = 0 (an edge normal to
/// x), side faces at dihedral angle alpha (degrees) to the base, height H.
/// J = 2 gives a rectangular base base_edge x base_width.
/// Throws InvalidSpec unless 0 < H < apothem * tan(alpha).
[[nodiscard]] PolyhedronMesh pyramid_frustum(int J, double base_edge, double alpha_deg, double H,
                                             double base_width = 0);

/// Truncated tetrahedron of the crossover study: J = 3, L = 1, 72 deg, H = 1/2.
[[nodiscard]] PolyhedronMesh truncated_tetrahedron_fig();

[[nodiscard]] PolyhedronMesh box(double lx, double ly, double lz);
/// Prism over a regular J-gon, centered, extending -H/2..H/2 along z.
[[nodiscard]] PolyhedronMesh regular_prism(int J, double L, double H);

// Platonic and Archimedean solids with edge L, center at the origin.
[[nodiscard]] PolyhedronMesh tetrahedron(double L = 1.0);
[[nodiscard]] PolyhedronMesh cube(double L = 1.0);
[[nodiscard]] PolyhedronMesh octahedron(double L = 1.0);
[[nodiscard]] PolyhedronMesh dodecahedron(double L = 1.0);
[[nodiscard]] PolyhedronMesh icosahedron(double L = 1.0);
[[nodiscard]] PolyhedronMesh cuboctahedron(double L = 1.0);
[[nodiscard]] PolyhedronMesh truncated_cube(double L = 1.0);

/// Faces of the convex hull of points in general convex position, each
/// counterclockwise seen from outside.
[[nodiscard]] PolyhedronMesh convex_hull(const std::vector<RealVec3>& points, std::string name);

/// Scale mesh so that its circumradius about the origin equals a.
[[nodiscard]] PolyhedronMesh with_circumradius(const PolyhedronMesh& mesh, double a);

/// The polyhedron test suite: pyramidal frusta with 2-, 3-, 4-, 6-fold
/// symmetry, cuboctahedron, truncated cube, dodecahedron, icosahedron.
[[nodiscard]] std::vector<ShapeSpec> default_suite();

} // namespace ff::shapes
