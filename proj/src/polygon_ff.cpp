#include "formfactor/polygon_ff.hpp"

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

/// In-plane unit direction and magnitude of q_par.
struct InplaneFrame {
    double t;
    ComplexVec3 e_cross;
};

InplaneFrame inplane_frame(const WavevectorDecomposition& d)
{
    const double t = safe_norm(d.q_par);
    return {t, d.q_cross / t};
}

} // namespace

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::Analytic: return "Analytic";
    case Method::SeriesFullQ: return "SeriesFullQ";
    case Method::SeriesInPlane: return "SeriesInPlane";
    case Method::QParZero: return "QParZero";
    case Method::QZero: return "QZero";
    case Method::SymmetryPath: return "SymmetryPath";
    }
    return "Unknown";
}

void EvalConfig::validate() const
{
    auto in_unit = [](double x) { return x > 0 && x < 1; };
    if (!in_unit(threshold_q) || !in_unit(threshold_q_par) || !in_unit(threshold_polyhedron))
        throw Error(ErrorKind::InvalidSpec, "series thresholds must lie in (0, 1)");
    if (max_order < 4)
        throw Error(ErrorKind::InvalidSpec, "max_order must be at least 4");
    if (!(epsilon > 0))
        throw Error(ErrorKind::InvalidSpec, "termination epsilon must be positive");
}

PolygonCoefficients::PolygonCoefficients(const ComplexVec3& q, const Polygon& polygon)
    : polygon_(&polygon), d_(decompose(q, polygon.plane()))
{
    qr_perp_ = d_.q_perp_scalar * polygon.plane().r_perp;
    in_plane_.push_back(polygon.area());
    perp_pow_.push_back(1.0);
    if (d_.q_par_is_zero)
        return;

    const auto frame = inplane_frame(d_);
    t_ = frame.t;
    const auto& edges = polygon.edges();
    const std::size_t n = edges.E.size();
    w_.resize(n);
    pe_.assign(n, {complex(1.0)});
    pr_.assign(n, {complex(1.0)});
    for (std::size_t j = 0; j < n; ++j)
        w_[j] = dot_conjugated(frame.e_cross, edges.E[j]);
}

void PolygonCoefficients::grow(int order)
{
    // Power tables up to (e.R)^{order+1} and (e.E)^{order+1}.
    const auto& edges = polygon_->edges();
    const ComplexVec3 e = d_.q_par / t_;
    for (std::size_t j = 0; j < w_.size(); ++j) {
        auto& pr = pr_[j];
        const complex y = dot_bilinear(e, edges.R[j]);
        while (static_cast<int>(pr.size()) <= order + 1) {
            const int k = static_cast<int>(pr.size());
            pr.push_back(pr.back() * y / static_cast<double>(k));
        }
        auto& pe = pe_[j];
        const complex x = dot_bilinear(e, edges.E[j]);
        const complex x2 = x * x;
        while (2 * (static_cast<int>(pe.size()) - 1) < order + 1) {
            const int l = static_cast<int>(pe.size());
            pe.push_back(pe.back() * x2 / static_cast<double>((2 * l) * (2 * l + 1)));
        }
    }
}

complex PolygonCoefficients::in_plane(int m)
{
    if (m < 0)
        return 0.0;
    if (d_.q_par_is_zero)
        return m == 0 ? complex(polygon_->area()) : complex(0.0);
    while (static_cast<int>(in_plane_.size()) <= m) {
        const int k = static_cast<int>(in_plane_.size());
        grow(k);
        complex s = 0;
        for (std::size_t j = 0; j < w_.size(); ++j) {
            complex inner = 0;
            for (int l = 0; 2 * l <= k + 1; ++l)
                inner += pe_[j][l] * pr_[j][k + 1 - 2 * l];
            s += w_[j] * inner;
        }
        in_plane_.push_back(2.0 * std::pow(t_, k) * s);
    }
    return in_plane_[m];
}

complex PolygonCoefficients::full(int n)
{
    if (n < 0)
        return 0.0;
    while (static_cast<int>(perp_pow_.size()) <= n) {
        const int k = static_cast<int>(perp_pow_.size());
        perp_pow_.push_back(perp_pow_.back() * qr_perp_ / static_cast<double>(k));
    }
    if (d_.q_par_is_zero)
        return perp_pow_[n] * polygon_->area();
    complex s = 0;
    for (int m = 0; m <= n; ++m)
        s += perp_pow_[n - m] * in_plane(m);
    return s;
}

complex ff_polygon_analytic(const ComplexVec3& q, const Polygon& polygon)
{
    check_q(q);
    const auto d = decompose(q, polygon.plane());
    if (d.q_par_is_zero)
        throw Error(ErrorKind::QParZero, "closed form requires q_par != 0");
    const auto frame = inplane_frame(d);
    const auto& edges = polygon.edges();
    complex s = 0;
    for (std::size_t j = 0; j < edges.E.size(); ++j) {
        const complex w = dot_conjugated(frame.e_cross, edges.E[j]);
        s += w * sinc(dot_bilinear(q, edges.E[j])) * std::exp(I * dot_bilinear(q, edges.R[j]));
    }
    return 2.0 / (I * frame.t) * s * origin_phase(q, polygon.origin_shift());
}

complex coeff_fn(int n, const ComplexVec3& q, const Polygon& polygon)
{
    check_q(q);
    if (n < 0)
        throw Error(ErrorKind::InvalidSpec, "coefficient order must be non-negative");
    if (n == 0)
        return polygon.area();
    PolygonCoefficients c(q, polygon);
    return c.full(n);
}

complex coeff_fn_direct(int n, const ComplexVec3& q, const Polygon& polygon)
{
    check_q(q);
    const auto d = decompose(q, polygon.plane());
    if (d.q_par_is_zero)
        throw Error(ErrorKind::QParZero, "edge-sum coefficients require q_par != 0");
    const auto& edges = polygon.edges();
    auto fact = [](int k) {
        double f = 1;
        for (int i = 2; i <= k; ++i)
            f *= i;
        return f;
    };
    ComplexVec3 acc = ComplexVec3::Zero();
    for (std::size_t j = 0; j < edges.E.size(); ++j) {
        const complex x = dot_bilinear(q, edges.E[j]);
        const complex y = dot_bilinear(q, edges.R[j]);
        complex inner = 0;
        for (int l = 0; 2 * l <= n + 1; ++l)
            inner += std::pow(x, 2 * l) / fact(2 * l + 1) * std::pow(y, n + 1 - 2 * l) / fact(n + 1 - 2 * l);
        acc += edges.E[j].cast<complex>() * inner;
    }
    return 2.0 / d.norm_sq_q_par * dot_conjugated(d.q_cross, acc);
}

EvalResult ff_polygon_series_full_q(const ComplexVec3& q, const Polygon& polygon, const EvalConfig& cfg)
{
    check_q(q);
    const complex phase = origin_phase(q, polygon.origin_shift());
    if (q.isZero(0.0))
        return {polygon.area() * phase, Method::SeriesFullQ, 0, true};

    PolygonCoefficients c(q, polygon);
    detail::SeriesAccumulator acc{polygon.area()};
    for (int n = 1; n <= cfg.max_order && !acc.done; ++n)
        acc.add(n, c.full(n), cfg.epsilon);
    return {acc.sum * phase, Method::SeriesFullQ, acc.order, acc.done};
}

EvalResult ff_polygon_series_inplane(const ComplexVec3& q, const Polygon& polygon, const EvalConfig& cfg)
{
    check_q(q);
    PolygonCoefficients c(q, polygon);
    const complex phase = std::exp(I * c.perp_phase()) * origin_phase(q, polygon.origin_shift());
    if (c.decomposition().q_par_is_zero)
        return {polygon.area() * phase, Method::SeriesInPlane, 0, true};

    detail::SeriesAccumulator acc{polygon.area()};
    for (int n = 1; n <= cfg.max_order && !acc.done; ++n)
        acc.add(n, c.in_plane(n), cfg.epsilon);
    return {acc.sum * phase, Method::SeriesInPlane, acc.order, acc.done};
}

Method select_polygon_method(const WavevectorDecomposition& d, const Polygon& polygon, const EvalConfig& cfg)
{
    if (cfg.use_symmetry && polygon.symmetry())
        return Method::SymmetryPath;
    if (d.q_par_is_zero)
        return Method::QParZero;
    const double a = polygon.radius();
    if (a * safe_norm(d.q) < cfg.threshold_q)
        return Method::SeriesFullQ;
    if (a * safe_norm(d.q_par) < cfg.threshold_q_par)
        return Method::SeriesInPlane;
    return Method::Analytic;
}

EvalResult ff_polygon(const ComplexVec3& q, const Polygon& polygon, const EvalConfig& cfg, MethodTrace* trace)
{
    check_q(q);
    cfg.validate();
    const auto d = decompose(q, polygon.plane());
    const Method m = select_polygon_method(d, polygon, cfg);

    EvalResult r;
    switch (m) {
    case Method::SymmetryPath:
        r = {ff_polygon_s2(q, polygon, *polygon.symmetry()), m, 0, true};
        break;
    case Method::QParZero:
        r = {std::exp(I * d.q_perp_scalar * polygon.plane().r_perp) * polygon.area() *
                 origin_phase(q, polygon.origin_shift()),
             m, 0, true};
        break;
    case Method::SeriesFullQ:
        r = ff_polygon_series_full_q(q, polygon, cfg);
        break;
    case Method::SeriesInPlane:
        r = ff_polygon_series_inplane(q, polygon, cfg);
        break;
    default:
        r = {ff_polygon_analytic(q, polygon), Method::Analytic, 0, true};
        break;
    }
    if (!r.converged)
        throw Error(ErrorKind::NotConverged, "polygon series reached max_order " + std::to_string(cfg.max_order));
    if (trace) {
        trace->method = r.method;
        trace->sub_method = r.method;
        trace->terms = r.terms_used;
        trace->faces.clear();
    }
    return r;
}

complex ff_polygon_s2(const ComplexVec3& q, const Polygon& polygon, const SymmetryPairing& pairing)
{
    check_q(q);
    const auto& chain = polygon.chain();
    const Plane& plane = polygon.plane();
    const std::size_t half = static_cast<std::size_t>(pairing.half_count);
    if (pairing.kind != SymmetryKind::S2Polygon || 2 * half != chain.size())
        throw Error(ErrorKind::InvalidPairing, "pairing does not describe a twofold axis of this polygon");
    auto par = [&plane](const RealVec3& v) -> RealVec3 { return v - plane.normal.dot(v) * plane.normal; };
    const double tol = kSymmetryTol * polygon.radius();
    for (std::size_t j = 0; j < half; ++j)
        if ((par(chain.vertices[j]) + par(chain.vertices[j + half])).norm() > tol)
            throw Error(ErrorKind::InvalidPairing, "vertex " + std::to_string(j) + " has no inverted partner");

    const auto d = decompose(q, plane);
    const complex phase = std::exp(I * d.q_perp_scalar * plane.r_perp) * origin_phase(q, polygon.origin_shift());
    if (d.q_par_is_zero) {
        double ar = 0;
        for (std::size_t j = 1; j <= half; ++j)
            ar += plane.normal.dot(chain.at(static_cast<long>(j) - 1).cross(chain.at(static_cast<long>(j))));
        return phase * ar;
    }
    const auto frame = inplane_frame(d);
    const auto& edges = polygon.edges();
    complex s = 0;
    for (std::size_t j = 0; j < half; ++j) {
        const complex w = dot_conjugated(frame.e_cross, edges.E[j]);
        s += w * sinc(dot_bilinear(q, edges.E[j])) * std::sin(dot_bilinear(d.q_par, edges.R[j]));
    }
    return 4.0 / frame.t * phase * s;
}

complex ff_polygon_leemittra(const ComplexVec3& q, const Polygon& polygon)
{
    check_q(q);
    const auto d = decompose(q, polygon.plane());
    if (d.q_par_is_zero)
        throw Error(ErrorKind::SingularDenominator, "q_par = 0");
    const auto& edges = polygon.edges();
    const auto& chain = polygon.chain();
    const long n = static_cast<long>(edges.E.size());
    const double guard = 1e-12 * safe_norm(q) * polygon.radius();
    std::vector<complex> qe(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
        qe[j] = dot_bilinear(q, edges.E[j]);
        if (std::abs(qe[j]) < guard)
            throw Error(ErrorKind::SingularDenominator, "q is orthogonal to edge " + std::to_string(j));
    }
    complex s = 0;
    for (long j = 0; j < n; ++j) {
        // E[j] ends at vertex j, E[j+1] starts there.
        const long jp = (j + 1) % n;
        const double c = polygon.plane().normal.dot(edges.E[j].cross(edges.E[jp]));
        s += c / (qe[j] * qe[jp]) * std::exp(I * dot_bilinear(q, chain.vertices[j]));
    }
    return s * origin_phase(q, polygon.origin_shift());
}

} // namespace ff
