// formfactor/polygon_ff.hpp
//
// Form factor f(q, G) = integral over G of exp(i q.r) for a planar polygon
// G embedded in 3-D space, at complex wavevector q.
//
// The closed form obtained from Stokes' theorem has a removable singularity
// at q_par = 0; near it the edge sum cancels and loses precision, so the
// dispatcher ff_polygon() switches to one of two power series:
//
//   full-q series    f = sum_n i^n f_n(q)                    for a|q|     < c
//   in-plane series  f = e^{i q_perp r_perp} sum_n i^n f_n(q_par)  for a|q_par| < c_par
//
// and otherwise uses the closed form.
#pragma once

#include "formfactor/linalg.hpp"
#include "formfactor/mesh.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace ff {

enum class Method { Analytic, SeriesFullQ, SeriesInPlane, QParZero, QZero, SymmetryPath };

[[nodiscard]] std::string_view to_string(Method m);

struct EvalConfig {
    double threshold_q = 1e-1;            // c: full-q polygon series below a|q| < c
    double threshold_q_par = 1e-1;        // c_par: in-plane series below a|q_par| < c_par
    double threshold_polyhedron = 1e-1;   // C: polyhedron series below a|q| < C
    int max_order = 40;
    double epsilon = kMachineEpsilon;     // even-order termination threshold
    bool use_symmetry = true;             // take S2 / Ci fast paths when detected

    /// Throws InvalidSpec unless 0 < thresholds < 1 and max_order >= 4.
    void validate() const;
};

struct EvalResult {
    complex value;
    Method method = Method::Analytic;
    int terms_used = 0;
    bool converged = true;
};

/// Which computation each part of an evaluation took; used to locate
/// method switches along a ray in q.
struct MethodTrace {
    Method method = Method::Analytic;
    Method sub_method = Method::Analytic;
    int terms = 0;
    std::vector<std::pair<Method, int>> faces;

    bool operator==(const MethodTrace&) const = default;
};

/// Series coefficients f_n of a polygon at one wavevector.
///
/// in_plane(m) is f_m(q_par), computed from the edge sum with the in-plane
/// wavevector only (no cancellation as q_par -> 0). full(n) is f_n(q),
/// assembled from the in-plane coefficients by the binomial identity
///   f_n(q) = sum_m (q_perp r_perp)^{n-m}/(n-m)! f_m(q_par).
/// For q_par = 0, f_m(q_par) = Ar * delta_{m0}.
class PolygonCoefficients {
public:
    PolygonCoefficients(const ComplexVec3& q, const Polygon& polygon);

    [[nodiscard]] complex in_plane(int m);
    [[nodiscard]] complex full(int n);
    [[nodiscard]] const WavevectorDecomposition& decomposition() const { return d_; }
    /// q_perp * r_perp
    [[nodiscard]] complex perp_phase() const { return qr_perp_; }

private:
    void grow(int order);

    const Polygon* polygon_;
    WavevectorDecomposition d_;
    complex qr_perp_;
    double t_ = 0; // |q_par|
    std::vector<complex> w_;                // conj(e_cross) . E_j
    std::vector<std::vector<complex>> pe_;  // (e.E_j)^{2l} / (2l+1)!
    std::vector<std::vector<complex>> pr_;  // (e.R_j)^k / k!
    std::vector<complex> in_plane_;         // cached f_m(q_par)
    std::vector<complex> perp_pow_;         // (q_perp r_perp)^k / k!
};

/// Closed form for q_par != 0. Throws QParZero otherwise.
[[nodiscard]] complex ff_polygon_analytic(const ComplexVec3& q, const Polygon& polygon);

/// f_n(q) for the polygon as stored (coefficients depend on the origin).
/// n = 0 returns the area.
[[nodiscard]] complex coeff_fn(int n, const ComplexVec3& q, const Polygon& polygon);

/// f_n(q) from the edge sum with the full wavevector inserted directly.
/// Mathematically equal to coeff_fn; loses accuracy when q is nearly
/// normal to the plane. Throws QParZero when q_par = 0.
[[nodiscard]] complex coeff_fn_direct(int n, const ComplexVec3& q, const Polygon& polygon);

[[nodiscard]] EvalResult ff_polygon_series_full_q(const ComplexVec3& q, const Polygon& polygon,
                                                  const EvalConfig& cfg = {});
[[nodiscard]] EvalResult ff_polygon_series_inplane(const ComplexVec3& q, const Polygon& polygon,
                                                   const EvalConfig& cfg = {});

/// Method the dispatcher takes for this wavevector.
[[nodiscard]] Method select_polygon_method(const WavevectorDecomposition& d, const Polygon& polygon,
                                           const EvalConfig& cfg);

/// Stable evaluation at any q. Throws NotConverged if a series hits
/// cfg.max_order.
[[nodiscard]] EvalResult ff_polygon(const ComplexVec3& q, const Polygon& polygon, const EvalConfig& cfg = {},
                                    MethodTrace* trace = nullptr);

/// Polygon with a perpendicular twofold axis: half-edge sum without
/// cancellation, valid for all q.
[[nodiscard]] complex ff_polygon_s2(const ComplexVec3& q, const Polygon& polygon, const SymmetryPairing& pairing);

/// Literature form n . sum_j (E_{j-1} x E_j) / ((q.E_{j-1})(q.E_j)) e^{i q.V_j}.
/// Reference only; throws SingularDenominator near its singular planes.
[[nodiscard]] complex ff_polygon_leemittra(const ComplexVec3& q, const Polygon& polygon);

namespace detail {

/// Accumulates sum_n i^n c_n with termination on an even-order term that
/// falls below epsilon relative to the running sum.
struct SeriesAccumulator {
    complex sum;
    int order = 0;
    bool done = false;

    void add(int n, complex coefficient, double epsilon)
    {
        static const complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const complex term = powers[n % 4] * coefficient;
        sum += term;
        order = n;
        if (n % 2 == 0 && n > 0 && std::abs(term) <= epsilon * std::abs(sum))
            done = true;
    }
};

} // namespace detail

} // namespace ff
