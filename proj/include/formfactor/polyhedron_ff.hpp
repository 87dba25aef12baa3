// formfactor/polyhedron_ff.hpp
//
// Form factor F(q, P) = integral over P of exp(i q.r) for a polyhedron P.
// The divergence theorem reduces it to a weighted sum of face form factors,
//   F = 1/(i|q|^2) sum_k (q* . n_k) f(q, face_k),
// whose terms cancel as q -> 0; below a|q| < C the power series
// F = sum_n i^n F_n(q) is used instead.
#pragma once

#include "formfactor/mesh.hpp"
#include "formfactor/polygon_ff.hpp"

namespace ff {

/// Face-sum closed form, each face evaluated by ff_polygon(). Throws QZero
/// for q = 0.
[[nodiscard]] complex ff_polyhedron_analytic(const ComplexVec3& q, const Polyhedron& poly, const EvalConfig& cfg = {},
                                             MethodTrace* trace = nullptr);

/// Face-sum closed form with closed-form faces throughout, no series
/// anywhere. Loses accuracy as q -> 0; kept for reference and tests.
/// Throws QZero for q = 0, QParZero if some face has q_par = 0.
[[nodiscard]] complex ff_polyhedron_analytic_raw(const ComplexVec3& q, const Polyhedron& poly);

/// F_n(q) = 1/|q|^2 sum_k (q* . n_k) f_{n+1}(q, face_k). n = 0 reproduces
/// the volume. Throws QZero for q = 0.
[[nodiscard]] complex coeff_Fn(int n, const ComplexVec3& q, const Polyhedron& poly);

[[nodiscard]] EvalResult ff_polyhedron_series(const ComplexVec3& q, const Polyhedron& poly, const EvalConfig& cfg = {});

[[nodiscard]] Method select_polyhedron_method(const ComplexVec3& q, const Polyhedron& poly, const EvalConfig& cfg);

/// Stable evaluation at any q. Routes to the inversion-symmetric path when
/// the polyhedron has one and cfg.use_symmetry is set.
[[nodiscard]] EvalResult ff_polyhedron(const ComplexVec3& q, const Polyhedron& poly, const EvalConfig& cfg = {},
                                       MethodTrace* trace = nullptr);

/// Polyhedron with an inversion center at the origin: sum over one face of
/// each opposite pair, with antisymmetrized face form factors
/// f(q, G) - f(-q, G).
[[nodiscard]] complex ff_polyhedron_ci(const ComplexVec3& q, const Polyhedron& poly, const SymmetryPairing& pairing,
                                       const EvalConfig& cfg = {}, MethodTrace* trace = nullptr);

/// Antisymmetrized face form factor f(q, G) - f(-q, G) with its own small-q_par
/// series. Reports the method taken through `method` and `terms`.
[[nodiscard]] complex ff_face_antisymmetric(const ComplexVec3& q, const Polygon& face, const EvalConfig& cfg,
                                            Method* method = nullptr, int* terms = nullptr);

/// Prism of cross-section `base` extending from -h/2 to h/2 along the base
/// normal: F = h sinc(q_perp h/2) f(q_par, base).
[[nodiscard]] complex ff_prism(const ComplexVec3& q, const Polygon& base, double h, const EvalConfig& cfg = {});

} // namespace ff
