#include "formfactor/polyhedron_ff.hpp"

#include "formfactor/errors.hpp"

namespace ff {

namespace {

const complex I{0, 1};

complex origin_phase(const ComplexVec3& q, const RealVec3& shift)
{
    if (shift.isZero(0.0))
        return 1.0;
    return std::exp(I * dot_bilinear(q, shift));
}

void check_q(const ComplexVec3& q)
{
    if (!all_finite(q))
        throw Error(ErrorKind::NonFiniteInput, "wavevector has non-finite components");
}

void check_ci_pairing(const Polyhedron& poly, const SymmetryPairing& pairing)
{
    const std::size_t k = poly.faces().size();
    if (pairing.kind != SymmetryKind::CiPolyhedron || pairing.partner.size() != k ||
        2 * pairing.representatives.size() != k)
        throw Error(ErrorKind::InvalidPairing, "pairing does not describe an inversion center of this polyhedron");
    for (int r : pairing.representatives) {
        const int p = pairing.partner.at(static_cast<std::size_t>(r));
        if (p < 0 || static_cast<std::size_t>(p) >= k ||
            pairing.partner[static_cast<std::size_t>(p)] != r ||
            (poly.faces()[r].plane().normal + poly.faces()[p].plane().normal).norm() > 1e-10)
            throw Error(ErrorKind::InvalidPairing, "face " + std::to_string(r) + " has no opposite partner");
    }
}

} // namespace

complex ff_polyhedron_analytic(const ComplexVec3& q, const Polyhedron& poly, const EvalConfig& cfg, MethodTrace* trace)
{
    check_q(q);
    const double s = safe_norm(q);
    if (s == 0)
        throw Error(ErrorKind::QZero, "closed form requires q != 0");
    const ComplexVec3 u = q / s;
    if (trace)
        trace->faces.clear();
    complex sum = 0;
    MethodTrace face_trace;
    for (const auto& face : poly.faces()) {
        const auto r = ff_polygon(q, face, cfg, trace ? &face_trace : nullptr);
        sum += dot_conjugated(u, face.plane().normal) * r.value;
        if (trace)
            trace->faces.emplace_back(r.method, r.terms_used);
    }
    return sum / (I * s) * origin_phase(q, poly.origin_shift());
}

complex ff_polyhedron_analytic_raw(const ComplexVec3& q, const Polyhedron& poly)
{
    check_q(q);
    const double s = safe_norm(q);
    if (s == 0)
        throw Error(ErrorKind::QZero, "closed form requires q != 0");
    const ComplexVec3 u = q / s;
    complex sum = 0;
    for (const auto& face : poly.faces())
        sum += dot_conjugated(u, face.plane().normal) * ff_polygon_analytic(q, face);
    return sum / (I * s) * origin_phase(q, poly.origin_shift());
}

complex coeff_Fn(int n, const ComplexVec3& q, const Polyhedron& poly)
{
    check_q(q);
    if (n < 0)
        throw Error(ErrorKind::InvalidSpec, "coefficient order must be non-negative");
    const double s = safe_norm(q);
    if (s == 0)
        throw Error(ErrorKind::QZero, "coefficient formula requires q != 0");
    const ComplexVec3 u = q / s;
    complex sum = 0;
    for (const auto& face : poly.faces()) {
        PolygonCoefficients c(u, face);
        sum += dot_conjugated(u, face.plane().normal) * c.full(n + 1);
    }
    return std::pow(s, n) * sum;
}

EvalResult ff_polyhedron_series(const ComplexVec3& q, const Polyhedron& poly, const EvalConfig& cfg)
{
    check_q(q);
    const complex phase = origin_phase(q, poly.origin_shift());
    const double s = safe_norm(q);
    if (s == 0)
        return {poly.volume() * phase, Method::SeriesFullQ, 0, true};

    // Coefficients are evaluated at the unit vector u = q/s and rescaled
    // by s^n, which keeps every intermediate in range for tiny q.
    const ComplexVec3 u = q / s;
    std::vector<PolygonCoefficients> faces;
    std::vector<complex> weights;
    faces.reserve(poly.faces().size());
    for (const auto& face : poly.faces()) {
        faces.emplace_back(u, face);
        weights.push_back(dot_conjugated(u, face.plane().normal));
    }

    detail::SeriesAccumulator acc{poly.volume()};
    double scale = 1;
    for (int n = 1; n <= cfg.max_order && !acc.done; ++n) {
        scale *= s;
        complex fn = 0;
        for (std::size_t k = 0; k < faces.size(); ++k)
            fn += weights[k] * faces[k].full(n + 1);
        acc.add(n, scale * fn, cfg.epsilon);
    }
    return {acc.sum * phase, Method::SeriesFullQ, acc.order, acc.done};
}

Method select_polyhedron_method(const ComplexVec3& q, const Polyhedron& poly, const EvalConfig& cfg)
{
    const double s = safe_norm(q);
    if (s == 0)
        return Method::QZero;
    if (cfg.use_symmetry && poly.symmetry())
        return Method::SymmetryPath;
    if (poly.radius() * s < cfg.threshold_polyhedron)
        return Method::SeriesFullQ;
    return Method::Analytic;
}

EvalResult ff_polyhedron(const ComplexVec3& q, const Polyhedron& poly, const EvalConfig& cfg, MethodTrace* trace)
{
    check_q(q);
    cfg.validate();
    const Method m = select_polyhedron_method(q, poly, cfg);
    EvalResult r;
    if (trace)
        trace->faces.clear();
    switch (m) {
    case Method::QZero:
        r = {poly.volume(), m, 0, true};
        if (trace)
            *trace = {m, m, 0, {}};
        break;
    case Method::SymmetryPath:
        r = {ff_polyhedron_ci(q, poly, *poly.symmetry(), cfg, trace), m, trace ? trace->terms : 0, true};
        break;
    case Method::SeriesFullQ:
        r = ff_polyhedron_series(q, poly, cfg);
        if (!r.converged)
            throw Error(ErrorKind::NotConverged,
                        "polyhedron series reached max_order " + std::to_string(cfg.max_order));
        if (trace)
            *trace = {m, m, r.terms_used, {}};
        break;
    default:
        r = {ff_polyhedron_analytic(q, poly, cfg, trace), Method::Analytic, 0, true};
        if (trace) {
            trace->method = trace->sub_method = Method::Analytic;
            trace->terms = 0;
        }
        break;
    }
    return r;
}

complex ff_face_antisymmetric(const ComplexVec3& q, const Polygon& face, const EvalConfig& cfg, Method* method,
                              int* terms)
{
    const auto d = decompose(q, face.plane());
    const complex qr = d.q_perp_scalar * face.plane().r_perp;
    const complex two_i_sin = 2.0 * I * std::sin(qr);
    auto report = [&](Method m, int t) {
        if (method)
            *method = m;
        if (terms)
            *terms = t;
    };

    if (d.q_par_is_zero) {
        report(Method::QParZero, 0);
        return two_i_sin * face.area();
    }

    const double a = face.radius();
    if (a * safe_norm(q) < cfg.threshold_q || a * safe_norm(d.q_par) < cfg.threshold_q_par) {
        // Even orders carry 2i sin(q_perp r_perp), odd orders 2 cos(q_perp r_perp).
        // Termination follows the underlying in-plane series, since the
        // even-order prefactor may vanish.
        const complex two_cos = 2.0 * std::cos(qr);
        PolygonCoefficients c(q, face);
        detail::SeriesAccumulator acc{face.area()};
        complex tilde = two_i_sin * face.area();
        static const complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (int n = 1; n <= cfg.max_order && !acc.done; ++n) {
            const complex fn = c.in_plane(n);
            acc.add(n, fn, cfg.epsilon);
            tilde += powers[n % 4] * (n % 2 == 0 ? two_i_sin : two_cos) * fn;
        }
        if (!acc.done)
            throw Error(ErrorKind::NotConverged, "face series reached max_order " + std::to_string(cfg.max_order));
        report(Method::SeriesInPlane, acc.order);
        return tilde;
    }

    const double t = safe_norm(d.q_par);
    const ComplexVec3 e_cross = d.q_cross / t;
    const auto& edges = face.edges();
    complex s = 0;
    if (cfg.use_symmetry && face.symmetry()) {
        const auto half = static_cast<std::size_t>(face.symmetry()->half_count);
        for (std::size_t j = 0; j < half; ++j)
            s += dot_conjugated(e_cross, edges.E[j]) * sinc(dot_bilinear(q, edges.E[j])) *
                 std::sin(dot_bilinear(d.q_par, edges.R[j]));
        report(Method::SymmetryPath, 0);
        return 4.0 * two_i_sin / t * s;
    }
    for (std::size_t j = 0; j < edges.E.size(); ++j)
        s += dot_conjugated(e_cross, edges.E[j]) * sinc(dot_bilinear(q, edges.E[j])) *
             std::cos(dot_bilinear(q, edges.R[j]));
    report(Method::Analytic, 0);
    return 4.0 / (I * t) * s;
}

complex ff_polyhedron_ci(const ComplexVec3& q, const Polyhedron& poly, const SymmetryPairing& pairing,
                         const EvalConfig& cfg, MethodTrace* trace)
{
    check_q(q);
    check_ci_pairing(poly, pairing);
    const complex phase = origin_phase(q, poly.origin_shift());
    const double s = safe_norm(q);
    if (trace) {
        trace->method = Method::SymmetryPath;
        trace->terms = 0;
        trace->faces.clear();
    }
    if (s == 0) {
        if (trace)
            trace->sub_method = Method::QZero;
        return poly.volume() * phase;
    }
    if (poly.radius() * s < cfg.threshold_polyhedron) {
        const auto r = ff_polyhedron_series(q, poly, cfg);
        if (!r.converged)
            throw Error(ErrorKind::NotConverged,
                        "polyhedron series reached max_order " + std::to_string(cfg.max_order));
        if (trace) {
            trace->sub_method = Method::SeriesFullQ;
            trace->terms = r.terms_used;
        }
        return r.value;
    }

    const ComplexVec3 u = q / s;
    complex sum = 0;
    for (int k : pairing.representatives) {
        const Polygon& face = poly.faces()[static_cast<std::size_t>(k)];
        Method m{};
        int terms = 0;
        sum += dot_conjugated(u, face.plane().normal) * ff_face_antisymmetric(q, face, cfg, &m, &terms);
        if (trace)
            trace->faces.emplace_back(m, terms);
    }
    if (trace)
        trace->sub_method = Method::Analytic;
    return sum / (I * s) * phase;
}

complex ff_prism(const ComplexVec3& q, const Polygon& base, double h, const EvalConfig& cfg)
{
    check_q(q);
    if (!(h > 0))
        throw Error(ErrorKind::InvalidSpec, "prism height must be positive");
    const auto d = decompose(q, base.plane());
    return h * sinc(d.q_perp_scalar * (h / 2)) * ff_polygon(d.q_par, base, cfg).value;
}

} // namespace ff
