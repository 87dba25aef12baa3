// formfactor/mesh.hpp
//
// Polygonal vertex chains and closed polyhedral meshes: validation, plane
// and edge geometry, area, volume, center of gravity, origin translation
// and point-symmetry detection.
#pragma once

#include "formfactor/errors.hpp"
#include "formfactor/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ff {

inline constexpr double kDefaultPlanarityTol = 1e-10;
inline constexpr double kSymmetryTol = 1e-12;

/// Ordered planar vertex loop; vertex J-1 connects back to vertex 0.
struct VertexChain {
    std::vector<RealVec3> vertices;

    [[nodiscard]] std::size_t size() const { return vertices.size(); }
    /// Cyclic access, any integer index.
    [[nodiscard]] const RealVec3& at(long j) const
    {
        const long n = static_cast<long>(vertices.size());
        return vertices[static_cast<std::size_t>(((j % n) + n) % n)];
    }
};

/// Half-edge vectors E_j = (V_j - V_{j-1})/2 and edge midpoints
/// R_j = (V_j + V_{j-1})/2.
struct EdgeMidpointRep {
    std::vector<RealVec3> E;
    std::vector<RealVec3> R;
};

struct PolygonDiagnostics {
    bool ok = true;
    double planarity_residual = 0; // max out-of-plane deviation / diameter
    double area = 0;               // signed w.r.t. the reference normal
    int winding = 0;               // +1, -1, or 0 for degenerate
    std::vector<ErrorKind> violations;
    std::vector<std::string> messages;
};

enum class SymmetryKind { S2Polygon, CiPolyhedron };

/// Pairing of elements (vertices of a polygon, faces of a polyhedron) with
/// their images under the point inversion.
struct SymmetryPairing {
    SymmetryKind kind = SymmetryKind::S2Polygon;
    int half_count = 0;               // J~ or K~
    std::vector<int> partner;         // element -> partner element
    std::vector<int> representatives; // one element of each pair
};

struct EnclosingRadii {
    double a = 0;          // max |V| over the whole figure
    std::vector<double> b; // per face, max |V_par|
};

[[nodiscard]] Plane plane_of(const VertexChain& chain);
[[nodiscard]] PolygonDiagnostics validate_polygon(const VertexChain& chain, double tol = kDefaultPlanarityTol,
                                                  const std::optional<RealVec3>& expected_normal = std::nullopt);
/// Surveyor's formula. Throws DegenerateChain for zero-area chains.
[[nodiscard]] double area(const VertexChain& chain);
[[nodiscard]] EdgeMidpointRep edge_midpoint_rep(const VertexChain& chain);
[[nodiscard]] EnclosingRadii enclosing_radii(const VertexChain& chain);
[[nodiscard]] RealVec3 center_of_gravity(const VertexChain& chain);
/// Shift every vertex by v.
[[nodiscard]] VertexChain translate(const VertexChain& chain, const RealVec3& v);
[[nodiscard]] std::optional<SymmetryPairing> detect_symmetry(const VertexChain& chain);
/// O(J^2) segment-pair intersection test for the loop.
[[nodiscard]] bool is_self_intersecting(const VertexChain& chain);

struct PolygonOptions {
    double planarity_tol = kDefaultPlanarityTol;
    /// Move the origin to the center of gravity when it lies outside the
    /// sphere of radius a around it; results then carry the phase e^{iq.v}.
    bool rehome_origin = true;
    bool detect_symmetry = true;
    bool strict = false; // also reject self-intersecting loops
    std::optional<RealVec3> expected_normal;
};

/// A validated polygon with the geometry needed for form factor evaluation
/// precomputed. Immutable after construction.
class Polygon {
public:
    explicit Polygon(VertexChain chain, const PolygonOptions& options = {});

    [[nodiscard]] const VertexChain& chain() const { return chain_; }
    [[nodiscard]] const Plane& plane() const { return plane_; }
    [[nodiscard]] const EdgeMidpointRep& edges() const { return edges_; }
    [[nodiscard]] std::size_t size() const { return chain_.size(); }
    [[nodiscard]] double area() const { return area_; }
    /// max |V_j| about the (possibly re-homed) origin
    [[nodiscard]] double radius() const { return radius_; }
    /// max |V_j,par|
    [[nodiscard]] double inplane_radius() const { return inplane_radius_; }
    [[nodiscard]] const std::optional<SymmetryPairing>& symmetry() const { return symmetry_; }
    /// Vertices are stored relative to this point.
    [[nodiscard]] const RealVec3& origin_shift() const { return shift_; }

private:
    VertexChain chain_;
    Plane plane_;
    EdgeMidpointRep edges_;
    double area_ = 0;
    double radius_ = 0;
    double inplane_radius_ = 0;
    std::optional<SymmetryPairing> symmetry_;
    RealVec3 shift_ = RealVec3::Zero();
};

/// Indexed polyhedral surface. Faces list 0-based vertex indices,
/// counterclockwise as seen from outside.
struct PolyhedronMesh {
    std::string name;
    std::vector<RealVec3> vertices;
    std::vector<std::vector<int>> faces;

    [[nodiscard]] VertexChain face_chain(std::size_t k) const;
};

struct MeshDiagnostics {
    bool ok = true;
    double volume = 0;           // signed, from the face sum
    double closure_residual = 0; // |sum n_k A_k| / sum A_k
    std::vector<std::string> violations;
};

[[nodiscard]] MeshDiagnostics validate_mesh(const PolyhedronMesh& mesh, double tol = kDefaultPlanarityTol);
/// Signed volume (1/3) sum_k A_k r_perp,k without validation.
[[nodiscard]] double signed_volume(const PolyhedronMesh& mesh);
/// Validated volume; throws InvalidMesh.
[[nodiscard]] double volume(const PolyhedronMesh& mesh);
[[nodiscard]] EnclosingRadii enclosing_radii(const PolyhedronMesh& mesh);
[[nodiscard]] RealVec3 center_of_gravity(const PolyhedronMesh& mesh);
[[nodiscard]] PolyhedronMesh translate(const PolyhedronMesh& mesh, const RealVec3& v);
[[nodiscard]] std::optional<SymmetryPairing> detect_symmetry(const PolyhedronMesh& mesh);

/// Apply a linear map to every vertex. For maps with negative determinant
/// the face orientation is reversed so that faces stay outward-oriented.
[[nodiscard]] PolyhedronMesh transform(const PolyhedronMesh& mesh, const Eigen::Matrix3d& m);
[[nodiscard]] VertexChain transform(const VertexChain& chain, const Eigen::Matrix3d& m);

struct PolyhedronOptions {
    double planarity_tol = kDefaultPlanarityTol;
    bool rehome_origin = true;
    bool detect_symmetry = true;
};

/// A validated polyhedron with per-face caches. Immutable after construction.
class Polyhedron {
public:
    explicit Polyhedron(PolyhedronMesh mesh, const PolyhedronOptions& options = {});

    [[nodiscard]] const PolyhedronMesh& mesh() const { return mesh_; }
    [[nodiscard]] const std::vector<Polygon>& faces() const { return faces_; }
    [[nodiscard]] double volume() const { return volume_; }
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] const std::optional<SymmetryPairing>& symmetry() const { return symmetry_; }
    [[nodiscard]] const RealVec3& origin_shift() const { return shift_; }

private:
    PolyhedronMesh mesh_;
    std::vector<Polygon> faces_;
    double volume_ = 0;
    double radius_ = 0;
    std::optional<SymmetryPairing> symmetry_;
    RealVec3 shift_ = RealVec3::Zero();
};

} // namespace ff
