// formfactor/oracle.hpp
//
// Brute-force evaluation of the defining integrals, for use as ground truth
// in tests. Production code paths never call into this header.
#pragma once

#include "formfactor/linalg.hpp"
#include "formfactor/mesh.hpp"

#include <cstdint>
#include <vector>

namespace ff::oracle {

struct OracleResult {
    complex value;
    double est_error = 0;
    long evaluations = 0;
};

inline constexpr long kNodeBudget = 1L << 20;

/// Gauss-Legendre rule on [0, 1] (Golub-Welsch).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
[[nodiscard]] GaussRule gauss_legendre01(int n);

/// Integral of exp(i q.r) over the polygon. Fan triangulation from the
/// center of gravity; each triangle mapped to the unit square by the
/// collapsed (Duffy) map and integrated with a tensor Gauss rule whose
/// order is raised until two successive levels agree to
/// tol * (|value| + area). Throws BudgetExceeded past 2^20 nodes per level
/// or for a|q| > 200.
[[nodiscard]] OracleResult quad_polygon(const ComplexVec3& q, const VertexChain& chain, double tol);

/// Same for a polyhedron star-shaped about its center of gravity, using
/// tetrahedra (cog, face-fan triangle). Throws NotStarShaped if any
/// tetrahedron has non-positive volume, BudgetExceeded as above or for
/// a|q| > 100.
[[nodiscard]] OracleResult quad_polyhedron(const ComplexVec3& q, const PolyhedronMesh& mesh, double tol);

/// Monte Carlo estimate over the bounding box with a winding-number
/// inside test. Deterministic for fixed seed. est_error is the standard
/// error. Requires n >= 10^4.
[[nodiscard]] OracleResult mc_polyhedron(const ComplexVec3& q, const PolyhedronMesh& mesh, long n, std::uint64_t seed);

/// Generalized winding number of the closed mesh about p (1 inside, 0 outside).
[[nodiscard]] double winding_number(const PolyhedronMesh& mesh, const RealVec3& p);

} // namespace ff::oracle
