#include "formfactor/harness.hpp"

#include "formfactor/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

namespace ff::harness {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::Matrix3d rotation(double angle, const RealVec3& axis)
{
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Eigen::Matrix3d mirror(const RealVec3& normal)
{
    const RealVec3 n = normal.normalized();
    return Eigen::Matrix3d::Identity() - 2.0 * n * n.transpose();
}

void require_symmetry(const std::vector<RealVec3>& vertices, const Eigen::Matrix3d& r)
{
    double a = 0;
    for (const auto& v : vertices)
        a = std::max(a, v.norm());
    for (const auto& v : vertices) {
        const RealVec3 w = r * v;
        bool found = false;
        for (const auto& u : vertices)
            found = found || (u - w).norm() <= kSymmetryTol * a;
        if (!found)
            throw Error(ErrorKind::NotASymmetry, "transformation does not map the figure onto itself");
    }
}

MethodTrace method_key(MethodTrace t)
{
    t.terms = 0;
    for (auto& f : t.faces)
        f.second = 0;
    return t;
}

double pair_delta(complex a, complex b)
{
    if (a == b)
        return 0;
    const double den = std::abs(a + b) / 2;
    if (den == 0)
        return std::numeric_limits<double>::infinity();
    return std::abs(a - b) / den;
}

double max_radius(const std::vector<RealVec3>& vs)
{
    double a = 0;
    for (const auto& v : vs)
        a = std::max(a, v.norm());
    return a;
}

nlohmann::json to_json(const ComplexVec3& q)
{
    auto j = nlohmann::json::array();
    for (int i = 0; i < 3; ++i)
        j.push_back({q(i).real(), q(i).imag()});
    return j;
}

nlohmann::json to_json(const DeltaReport& r)
{
    return {{"delta", r.delta}, {"argmax_q", to_json(r.argmax_q)}, {"samples", r.samples}, {"excluded", r.excluded}};
}

} // namespace

DeltaReport delta(const std::vector<complex>& f1, const std::vector<complex>& f2, const std::vector<ComplexVec3>& qs)
{
    if (f1.size() != f2.size() || f1.empty())
        throw Error(ErrorKind::InvalidSpec, "delta needs two non-empty lists of equal length");
    DeltaReport r;
    for (std::size_t i = 0; i < f1.size(); ++i) {
        // |F1 + F2| is symmetric in its arguments, so delta(F1,F2) = delta(F2,F1) bit for bit.
        const double den = std::abs(f1[i] + f2[i]) / 2;
        if (den == 0) {
            ++r.excluded;
            continue;
        }
        ++r.samples;
        const double d = std::abs(f1[i] - f2[i]) / den;
        if (d > r.delta || (r.samples == 1 && d >= r.delta)) {
            r.delta = d;
            if (i < qs.size())
                r.argmax_q = qs[i];
        }
    }
    if (r.samples == 0)
        throw Error(ErrorKind::AllPairsDegenerate, "every pair has F1 + F2 = 0");
    return r;
}

void merge(DeltaReport& into, const DeltaReport& other)
{
    if (other.delta > into.delta || into.samples == 0) {
        into.delta = std::max(into.delta, other.delta);
        into.argmax_q = other.argmax_q;
    }
    into.samples += other.samples;
    into.excluded += other.excluded;
}

std::vector<RealVec3> default_directions()
{
    return {
        RealVec3(0, 0, 1),
        RealVec3(1, 0, 0),
        RealVec3(1e-5, 0, 1).normalized(),
        RealVec3(1, 2e-5, 0).normalized(),
        RealVec3(1, 1, 1).normalized(),
        RealVec3(1, 2, 3).normalized(),
        RealVec3(-0.4, 0.7, 0.2).normalized(),
    };
}

std::vector<ComplexVec3> q_set(double a, const std::vector<RealVec3>& directions, int magnitudes, double qmin_a,
                               double qmax_a, double imag_fraction)
{
    std::vector<ComplexVec3> qs;
    const RealVec3 skew(0.6, -0.48, 0.64);
    for (const auto& d : directions) {
        RealVec3 other = skew - skew.dot(d) * d;
        other = other.norm() > 1e-3 ? other.normalized() : RealVec3(1, 0, 0).cross(d).normalized();
        for (int i = 0; i < magnitudes; ++i) {
            const double t = magnitudes == 1 ? 0.0 : static_cast<double>(i) / (magnitudes - 1);
            const double s = qmin_a * std::pow(qmax_a / qmin_a, t) / a;
            const ComplexVec3 re = to_complex(RealVec3(s * d));
            qs.push_back(re);
            qs.push_back(re + complex(0, imag_fraction * s) * to_complex(other));
        }
    }
    return qs;
}

std::vector<ComplexVec3> default_q_set(double a)
{
    return q_set(a, default_directions());
}

DeltaReport symmetry_suite(const PolyhedronMesh& mesh, const Eigen::Matrix3d& r, const std::vector<ComplexVec3>& qs,
                           const EvalConfig& cfg)
{
    require_symmetry(mesh.vertices, r);
    const Polyhedron poly(mesh);
    const Eigen::Matrix3cd rc = r.cast<complex>();
    std::vector<complex> f1, f2;
    for (const auto& q : qs) {
        f1.push_back(ff_polyhedron(q, poly, cfg).value);
        f2.push_back(ff_polyhedron(rc * q, poly, cfg).value);
    }
    return delta(f1, f2, qs);
}

DeltaReport symmetry_suite(const VertexChain& chain, const Eigen::Matrix3d& r, const std::vector<ComplexVec3>& qs,
                           const EvalConfig& cfg)
{
    require_symmetry(chain.vertices, r);
    const Polygon poly(chain);
    const Eigen::Matrix3cd rc = r.cast<complex>();
    std::vector<complex> f1, f2;
    for (const auto& q : qs) {
        f1.push_back(ff_polygon(q, poly, cfg).value);
        f2.push_back(ff_polygon(rc * q, poly, cfg).value);
    }
    return delta(f1, f2, qs);
}

DeltaReport specialization_suite(const Evaluator& f1, const Evaluator& f2, const std::vector<ComplexVec3>& qs)
{
    std::vector<complex> v1, v2;
    for (const auto& q : qs) {
        v1.push_back(f1(q));
        v2.push_back(f2(q));
    }
    return delta(v1, v2, qs);
}

std::vector<NamedOp> symmetry_ops(const shapes::ShapeSpec& spec, const PolyhedronMesh& mesh)
{
    using K = shapes::ShapeKind;
    const RealVec3 ex(1, 0, 0), ey(0, 1, 0), ez(0, 0, 1);
    const Eigen::Matrix3d inversion = -Eigen::Matrix3d::Identity();
    std::vector<NamedOp> ops;
    switch (spec.kind) {
    case K::pyramid_frustum:
    case K::truncated_tetrahedron_fig: {
        const int j = spec.kind == K::pyramid_frustum ? static_cast<int>(spec.get("fold", 4)) : 3;
        if (j == 2) {
            ops.push_back({"C2 about z", rotation(pi, ez)});
            ops.push_back({"mirror x", mirror(ex)});
            ops.push_back({"mirror y", mirror(ey)});
        } else {
            ops.push_back({"C" + std::to_string(j) + " about z", rotation(2 * pi / j, ez)});
            ops.push_back({"mirror y", mirror(ey)});
        }
        break;
    }
    case K::regular_prism: {
        const int j = static_cast<int>(spec.get("fold", 6));
        ops.push_back({"C" + std::to_string(j) + " about z", rotation(2 * pi / j, ez)});
        ops.push_back({"mirror y", mirror(ey)});
        ops.push_back({"mirror z", mirror(ez)});
        break;
    }
    case K::box:
        ops.push_back({"C2 about z", rotation(pi, ez)});
        ops.push_back({"mirror x", mirror(ex)});
        ops.push_back({"inversion", inversion});
        break;
    case K::tetrahedron:
        ops.push_back({"C3 about (1,1,1)", rotation(2 * pi / 3, RealVec3(1, 1, 1))});
        ops.push_back({"C2 about z", rotation(pi, ez)});
        ops.push_back({"mirror (1,-1,0)", mirror(RealVec3(1, -1, 0))});
        break;
    case K::cube:
    case K::octahedron:
    case K::cuboctahedron:
    case K::truncated_cube:
        ops.push_back({"C4 about z", rotation(pi / 2, ez)});
        ops.push_back({"C3 about (1,1,1)", rotation(2 * pi / 3, RealVec3(1, 1, 1))});
        ops.push_back({"C2 about (1,1,0)", rotation(pi, RealVec3(1, 1, 0))});
        ops.push_back({"inversion", inversion});
        ops.push_back({"mirror (1,-1,0)", mirror(RealVec3(1, -1, 0))});
        break;
    case K::dodecahedron:
    case K::icosahedron: {
        const RealVec3 axis = spec.kind == K::dodecahedron ? plane_of(mesh.face_chain(0)).normal
                                                           : mesh.vertices.front().normalized();
        ops.push_back({"C5", rotation(2 * pi / 5, axis)});
        ops.push_back({"C3 about (1,1,1)", rotation(2 * pi / 3, RealVec3(1, 1, 1))});
        ops.push_back({"C2 about x", rotation(pi, ex)});
        ops.push_back({"inversion", inversion});
        ops.push_back({"mirror x", mirror(ex)});
        break;
    }
    case K::regular_polygon:
        break;
    }
    return ops;
}

std::vector<SymmetryCase> run_symmetry_suite(const std::vector<shapes::ShapeSpec>& suite, const EvalConfig& cfg)
{
    std::vector<SymmetryCase> out;
    for (const auto& spec : suite) {
        const auto fig = shapes::make(spec);
        const auto& mesh = std::get<PolyhedronMesh>(fig);
        const auto qs = default_q_set(max_radius(mesh.vertices));
        for (const auto& op : symmetry_ops(spec, mesh))
            out.push_back({spec.label(), op.name, symmetry_suite(mesh, op.matrix, qs, cfg)});
    }
    return out;
}

std::vector<SpecializationCase> run_specialization_suite(const EvalConfig& cfg)
{
    std::vector<SpecializationCase> out;
    auto poly_eval = [&cfg](std::shared_ptr<Polyhedron> p) {
        return [p, &cfg](const ComplexVec3& q) { return ff_polyhedron(q, *p, cfg).value; };
    };
    auto make_poly = [](const PolyhedronMesh& m) { return std::make_shared<Polyhedron>(m); };
    // Prism of height h with its base in z = 0, by the factorized formula.
    auto prism_eval = [&cfg](const VertexChain& base, double h) {
        auto polygon = std::make_shared<Polygon>(base);
        return [polygon, h, &cfg](const ComplexVec3& q) {
            return std::exp(complex(0, 1) * q.z() * (h / 2)) * ff_prism(q, *polygon, h, cfg);
        };
    };
    auto add = [&out](const std::string& name, const PolyhedronMesh& m1, const Evaluator& e1, const Evaluator& e2) {
        out.push_back({name, specialization_suite(e1, e2, default_q_set(max_radius(m1.vertices)))});
    };

    {
        const auto pyr = shapes::pyramid_frustum(4, 1.0, 90.0, 1.0);
        const auto cube = translate(shapes::box(1, 1, 1), RealVec3(0, 0, 0.5));
        add("square pyramid alpha=90 vs unit cube mesh", pyr, poly_eval(make_poly(pyr)), poly_eval(make_poly(cube)));
    }
    {
        const auto pyr = shapes::pyramid_frustum(4, 1.0, 90.0, 0.7);
        add("square pyramid alpha=90 vs prism formula", pyr, poly_eval(make_poly(pyr)),
            prism_eval(shapes::regular_polygon(4, 1.0), 0.7));
    }
    {
        const auto pyr = shapes::pyramid_frustum(3, 1.0, 90.0, 0.6);
        const auto prism = translate(shapes::regular_prism(3, 1.0, 0.6), RealVec3(0, 0, 0.3));
        add("triangular pyramid alpha=90 vs prism mesh", pyr, poly_eval(make_poly(pyr)), poly_eval(make_poly(prism)));
    }
    {
        const auto rect = shapes::pyramid_frustum(2, 1.0, 60.0, 0.4, 1.0);
        const auto sq = shapes::pyramid_frustum(4, 1.0, 60.0, 0.4);
        add("square-based rectangle frustum vs 4-fold frustum", rect, poly_eval(make_poly(rect)),
            poly_eval(make_poly(sq)));
    }
    {
        const auto prism = shapes::regular_prism(6, 1.0, 0.8);
        auto hex = std::make_shared<Polygon>(shapes::regular_polygon(6, 1.0));
        add("hexagonal prism mesh vs prism formula", prism, poly_eval(make_poly(prism)),
            [hex, &cfg](const ComplexVec3& q) { return ff_prism(q, *hex, 0.8, cfg); });
    }
    return out;
}

TracedEvaluator traced(const Polyhedron& poly, const EvalConfig& cfg)
{
    return [&poly, cfg](const ComplexVec3& q, MethodTrace* t) { return ff_polyhedron(q, poly, cfg, t); };
}

TracedEvaluator traced(const Polygon& polygon, const EvalConfig& cfg)
{
    return [&polygon, cfg](const ComplexVec3& q, MethodTrace* t) { return ff_polygon(q, polygon, cfg, t); };
}

namespace {

struct Scanner {
    const TracedEvaluator& eval;
    ComplexVec3 dir;
    double eta;
    std::vector<Switch>& out;

    MethodTrace key(double s) const
    {
        MethodTrace t;
        (void)eval(s * dir, &t);
        return method_key(t);
    }

    void locate(double lo, double hi, const MethodTrace& klo, const MethodTrace& khi, int depth = 0)
    {
        while (hi - lo > eta * lo) {
            const double mid = hi / lo > 1.5 ? std::sqrt(lo * hi) : lo + (hi - lo) / 2;
            if (!(mid > lo && mid < hi))
                break;
            const MethodTrace km = key(mid);
            if (km == klo) {
                lo = mid;
            } else if (km == khi) {
                hi = mid;
            } else if (depth < 16) {
                locate(lo, mid, klo, km, depth + 1);
                locate(mid, hi, km, khi, depth + 1);
                return;
            } else {
                hi = mid;
            }
        }
        Switch sw;
        sw.q = (lo + hi) / 2;
        const double s_minus = sw.q * (1 - eta);
        const double s_plus = sw.q * (1 + eta);
        const complex f_minus = eval(s_minus * dir, &sw.below).value;
        const complex f_plus = eval(s_plus * dir, &sw.above).value;
        sw.delta_cont = pair_delta(f_minus, f_plus);
        sw.q *= safe_norm(dir);
        out.push_back(sw);
    }
};

} // namespace

std::vector<Switch> continuity_scan(const TracedEvaluator& eval, const ComplexVec3& dir, double smin, double smax,
                                    int points, double eta)
{
    std::vector<Switch> out;
    if (points < 2 || !(smin > 0) || !(smax > smin))
        return out;
    Scanner sc{eval, dir, eta, out};
    double s_prev = smin;
    MethodTrace k_prev = sc.key(s_prev);
    for (int i = 1; i < points; ++i) {
        const double s = smin * std::pow(smax / smin, static_cast<double>(i) / (points - 1));
        const MethodTrace k = sc.key(s);
        if (!(k == k_prev))
            sc.locate(s_prev, s, k_prev, k);
        s_prev = s;
        k_prev = k;
    }
    return out;
}

ContinuitySummary run_continuity_suite(const std::vector<shapes::ShapeSpec>& suite, const EvalConfig& cfg, int points)
{
    ContinuitySummary sum;
    for (const auto& spec : suite) {
        const auto fig = shapes::make(spec);
        const Polyhedron poly(std::get<PolyhedronMesh>(fig));
        const auto eval = traced(poly, cfg);
        const double a = poly.radius();
        for (const auto& d : default_directions()) {
            const RealVec3 other = d.cross(RealVec3(0.36, 0.48, 0.8)).normalized();
            for (const ComplexVec3& dir : {to_complex(d), ComplexVec3(to_complex(d) + complex(0, 0.05) * to_complex(other))}) {
                std::vector<Switch> sw;
                try {
                    sw = continuity_scan(eval, dir, 1e-5 / a, 10 / a, points);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::NotConverged)
                        throw;
                    sum.not_converged = true;
                    continue;
                }
                sum.switches += sw.size();
                for (const auto& s : sw) {
                    if (s.delta_cont > sum.worst || sum.worst_shape.empty()) {
                        sum.worst = std::max(sum.worst, s.delta_cont);
                        sum.worst_shape = spec.label();
                        sum.worst_switch = s;
                    }
                }
            }
        }
    }
    return sum;
}

TuneResult tune_thresholds(const std::vector<shapes::ShapeSpec>& suite, const std::vector<EvalConfig>& grid, int points)
{
    if (grid.empty())
        throw Error(ErrorKind::InvalidSpec, "empty threshold grid");
    TuneResult best{grid.front(), std::numeric_limits<double>::infinity()};
    for (const auto& cfg : grid) {
        const auto s = run_continuity_suite(suite, cfg, points);
        if (s.not_converged)
            continue;
        if (s.worst < best.worst_delta_cont) {
            best.config = cfg;
            best.worst_delta_cont = s.worst;
        }
    }
    return best;
}

std::vector<EvalConfig> threshold_grid(const std::vector<double>& values, const EvalConfig& base)
{
    std::vector<EvalConfig> grid;
    for (double c : values)
        for (double cp : values)
            for (double cc : values) {
                EvalConfig cfg = base;
                cfg.threshold_q = c;
                cfg.threshold_q_par = cp;
                cfg.threshold_polyhedron = cc;
                grid.push_back(cfg);
            }
    return grid;
}

std::string report_json(const std::vector<SymmetryCase>& symmetry, const std::vector<SpecializationCase>& specialization,
                        const ContinuitySummary* continuity)
{
    nlohmann::json j;
    j["name"] = "selftest report";
    if (!symmetry.empty()) {
        DeltaReport worst;
        auto cases = nlohmann::json::array();
        for (const auto& c : symmetry) {
            merge(worst, c.report);
            auto r = to_json(c.report);
            r["shape"] = c.shape;
            r["op"] = c.op;
            cases.push_back(r);
        }
        j["symmetry"] = {{"worst", to_json(worst)}, {"cases", cases}};
    }
    if (!specialization.empty()) {
        DeltaReport worst;
        auto cases = nlohmann::json::array();
        for (const auto& c : specialization) {
            merge(worst, c.report);
            auto r = to_json(c.report);
            r["case"] = c.name;
            cases.push_back(r);
        }
        j["specialization"] = {{"worst", to_json(worst)}, {"cases", cases}};
    }
    if (continuity) {
        j["continuity"] = {{"worst", continuity->worst},
                           {"shape", continuity->worst_shape},
                           {"q", continuity->worst_switch.q},
                           {"below", std::string(to_string(continuity->worst_switch.below.method))},
                           {"above", std::string(to_string(continuity->worst_switch.above.method))},
                           {"switches", continuity->switches}};
    }
    return j.dump(2) + "\n";
}

} // namespace ff::harness
