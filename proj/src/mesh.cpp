#include "formfactor/mesh.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace ff {

namespace {

RealVec3 vertex_mean(const std::vector<RealVec3>& vs)
{
    RealVec3 c = RealVec3::Zero();
    for (const auto& v : vs)
        c += v;
    return c / static_cast<double>(vs.size());
}

// Newell sum, twice the vector area. Taken about the vertex mean, which
// leaves the result unchanged but keeps the products well scaled.
RealVec3 newell_sum(const VertexChain& chain, const RealVec3& c)
{
    RealVec3 s = RealVec3::Zero();
    const long n = static_cast<long>(chain.size());
    for (long j = 0; j < n; ++j)
        s += (chain.at(j - 1) - c).cross(chain.at(j) - c);
    return s;
}

double max_distance(const std::vector<RealVec3>& vs, const RealVec3& c)
{
    double r = 0;
    for (const auto& v : vs)
        r = std::max(r, (v - c).norm());
    return r;
}

struct PlaneFit {
    Plane plane;
    RealVec3 newell;
    double scale = 0; // max |V - mean|
};

std::optional<PlaneFit> fit_plane(const VertexChain& chain)
{
    if (chain.size() < 3)
        return std::nullopt;
    PlaneFit fit;
    const RealVec3 c = vertex_mean(chain.vertices);
    fit.scale = max_distance(chain.vertices, c);
    fit.newell = newell_sum(chain, c);
    const double len = fit.newell.norm();
    if (!(len > 1e-14 * fit.scale * fit.scale))
        return std::nullopt;
    fit.plane.normal = fit.newell / len;
    double rp = 0;
    for (const auto& v : chain.vertices)
        rp += fit.plane.normal.dot(v);
    fit.plane.r_perp = rp / static_cast<double>(chain.size());
    return fit;
}

double diameter(const std::vector<RealVec3>& vs)
{
    double d = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            d = std::max(d, (vs[i] - vs[j]).norm());
    return d;
}

bool points_match(const std::vector<RealVec3>& a, const std::vector<RealVec3>& b, double tol)
{
    if (a.size() != b.size())
        return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        bool found = false;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!used[i] && (p - b[i]).norm() <= tol) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

} // namespace

Plane plane_of(const VertexChain& chain)
{
    auto fit = fit_plane(chain);
    if (!fit)
        throw Error(ErrorKind::DegenerateChain, "vertex chain spans no area");
    return fit->plane;
}

PolygonDiagnostics validate_polygon(const VertexChain& chain, double tol, const std::optional<RealVec3>& expected_normal)
{
    PolygonDiagnostics diag;
    auto fail = [&diag](ErrorKind kind, std::string msg) {
        diag.ok = false;
        diag.violations.push_back(kind);
        diag.messages.push_back(std::move(msg));
    };

    for (const auto& v : chain.vertices) {
        if (!all_finite(v)) {
            fail(ErrorKind::NonFiniteInput, "vertex coordinate is not finite");
            return diag;
        }
    }
    auto fit = fit_plane(chain);
    if (!fit) {
        fail(ErrorKind::DegenerateChain, "chain has fewer than 3 vertices or zero area");
        return diag;
    }

    const double d = diameter(chain.vertices);
    double dev = 0;
    for (const auto& v : chain.vertices)
        dev = std::max(dev, std::abs(fit->plane.normal.dot(v) - fit->plane.r_perp));
    diag.planarity_residual = dev / d;
    if (diag.planarity_residual > tol) {
        std::ostringstream os;
        os << "out-of-plane deviation " << diag.planarity_residual << " exceeds tolerance " << tol;
        fail(ErrorKind::NotPlanar, os.str());
    }

    const double a2 = 0.5 * fit->newell.norm();
    diag.winding = 1;
    if (expected_normal) {
        const double s = expected_normal->dot(fit->newell);
        diag.winding = s > 0 ? 1 : (s < 0 ? -1 : 0);
    }
    diag.area = diag.winding * a2;
    if (diag.winding < 0)
        fail(ErrorKind::NegativeWinding, "chain runs clockwise with respect to the reference normal");
    else if (diag.winding == 0)
        fail(ErrorKind::DegenerateChain, "chain is perpendicular to the reference normal");
    return diag;
}

double area(const VertexChain& chain)
{
    auto fit = fit_plane(chain);
    if (!fit)
        throw Error(ErrorKind::DegenerateChain, "vertex chain spans no area");
    return 0.5 * fit->plane.normal.dot(fit->newell);
}

EdgeMidpointRep edge_midpoint_rep(const VertexChain& chain)
{
    EdgeMidpointRep rep;
    const long n = static_cast<long>(chain.size());
    rep.E.reserve(chain.size());
    rep.R.reserve(chain.size());
    for (long j = 0; j < n; ++j) {
        rep.E.push_back((chain.at(j) - chain.at(j - 1)) / 2);
        rep.R.push_back((chain.at(j) + chain.at(j - 1)) / 2);
    }
    return rep;
}

EnclosingRadii enclosing_radii(const VertexChain& chain)
{
    const Plane p = plane_of(chain);
    EnclosingRadii r;
    double b = 0;
    for (const auto& v : chain.vertices) {
        r.a = std::max(r.a, v.norm());
        b = std::max(b, (v - p.normal.dot(v) * p.normal).norm());
    }
    r.b.push_back(b);
    return r;
}

RealVec3 center_of_gravity(const VertexChain& chain)
{
    const Plane p = plane_of(chain);
    const RealVec3 c = vertex_mean(chain.vertices);
    RealVec3 moment = RealVec3::Zero();
    double total = 0;
    const long n = static_cast<long>(chain.size());
    for (long j = 0; j < n; ++j) {
        const RealVec3& u = chain.at(j - 1);
        const RealVec3& v = chain.at(j);
        const double w = 0.5 * p.normal.dot((u - c).cross(v - c));
        moment += w * (c + u + v) / 3.0;
        total += w;
    }
    return moment / total;
}

VertexChain translate(const VertexChain& chain, const RealVec3& v)
{
    VertexChain out = chain;
    for (auto& x : out.vertices)
        x += v;
    return out;
}

VertexChain transform(const VertexChain& chain, const Eigen::Matrix3d& m)
{
    VertexChain out = chain;
    for (auto& x : out.vertices)
        x = m * x;
    return out;
}

std::optional<SymmetryPairing> detect_symmetry(const VertexChain& chain)
{
    const std::size_t n = chain.size();
    if (n < 4 || n % 2 != 0)
        return std::nullopt;
    const Plane p = plane_of(chain);
    double a = 0;
    for (const auto& v : chain.vertices)
        a = std::max(a, v.norm());
    const double tol = kSymmetryTol * a;
    const std::size_t half = n / 2;
    auto par = [&p](const RealVec3& v) -> RealVec3 { return v - p.normal.dot(v) * p.normal; };
    for (std::size_t j = 0; j < half; ++j) {
        if ((par(chain.vertices[j + half]) + par(chain.vertices[j])).norm() > tol)
            return std::nullopt;
    }
    SymmetryPairing s;
    s.kind = SymmetryKind::S2Polygon;
    s.half_count = static_cast<int>(half);
    s.partner.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        s.partner[j] = static_cast<int>((j + half) % n);
    for (std::size_t j = 0; j < half; ++j)
        s.representatives.push_back(static_cast<int>(j));
    return s;
}

bool is_self_intersecting(const VertexChain& chain)
{
    const Plane p = plane_of(chain);
    // In-plane basis.
    RealVec3 e1 = p.normal.unitOrthogonal();
    RealVec3 e2 = p.normal.cross(e1);
    const std::size_t n = chain.size();
    std::vector<Eigen::Vector2d> pts(n);
    for (std::size_t j = 0; j < n; ++j)
        pts[j] = {e1.dot(chain.vertices[j]), e2.dot(chain.vertices[j])};

    auto orient = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
        const double d = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
        return (d > 0) - (d < 0);
    };
    auto on_segment = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
        return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= c.y() &&
               c.y() <= std::max(a.y(), b.y());
    };
    auto intersects = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                          const Eigen::Vector2d& d) {
        const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
        if (o1 != o2 && o3 != o4)
            return true;
        return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
               (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            // skip edges sharing a vertex
            if (k == i + 1 || (i == 0 && k == n - 1))
                continue;
            if (intersects(pts[i], pts[(i + 1) % n], pts[k], pts[(k + 1) % n]))
                return true;
        }
    }
    return false;
}

Polygon::Polygon(VertexChain chain, const PolygonOptions& options)
    : chain_(std::move(chain))
{
    const auto diag = validate_polygon(chain_, options.planarity_tol, options.expected_normal);
    if (!diag.ok)
        throw Error(diag.violations.front(), diag.messages.front());
    if (options.strict && is_self_intersecting(chain_))
        throw Error(ErrorKind::DegenerateChain, "vertex chain intersects itself");

    if (options.rehome_origin) {
        const RealVec3 cog = center_of_gravity(chain_);
        if (cog.norm() > max_distance(chain_.vertices, cog)) {
            shift_ = cog;
            chain_ = translate(chain_, -cog);
        }
    }

    plane_ = plane_of(chain_);
    edges_ = edge_midpoint_rep(chain_);
    area_ = ff::area(chain_);
    for (const auto& v : chain_.vertices) {
        radius_ = std::max(radius_, v.norm());
        inplane_radius_ = std::max(inplane_radius_, (v - plane_.normal.dot(v) * plane_.normal).norm());
    }
    if (options.detect_symmetry)
        symmetry_ = detect_symmetry(chain_);
}

VertexChain PolyhedronMesh::face_chain(std::size_t k) const
{
    VertexChain c;
    c.vertices.reserve(faces[k].size());
    for (int idx : faces[k])
        c.vertices.push_back(vertices.at(static_cast<std::size_t>(idx)));
    return c;
}

MeshDiagnostics validate_mesh(const PolyhedronMesh& mesh, double tol)
{
    MeshDiagnostics diag;
    auto fail = [&diag](std::string msg) {
        diag.ok = false;
        diag.violations.push_back(std::move(msg));
    };

    if (mesh.faces.size() < 4)
        fail("mesh has fewer than 4 faces");
    for (const auto& v : mesh.vertices)
        if (!all_finite(v))
            fail("vertex coordinate is not finite");

    std::map<std::pair<int, int>, int> directed;
    RealVec3 closure = RealVec3::Zero();
    double total_area = 0;
    double vol3 = 0;
    const int nv = static_cast<int>(mesh.vertices.size());

    for (std::size_t k = 0; k < mesh.faces.size(); ++k) {
        const auto& f = mesh.faces[k];
        bool indices_ok = f.size() >= 3;
        for (int idx : f)
            indices_ok = indices_ok && idx >= 0 && idx < nv;
        if (!indices_ok) {
            fail("face " + std::to_string(k) + " has fewer than 3 vertices or an index out of range");
            continue;
        }
        for (std::size_t i = 0; i < f.size(); ++i)
            ++directed[{f[i], f[(i + 1) % f.size()]}];

        const VertexChain chain = mesh.face_chain(k);
        const auto pd = validate_polygon(chain, tol);
        if (!pd.ok) {
            fail("face " + std::to_string(k) + ": " + pd.messages.front());
            continue;
        }
        const Plane p = plane_of(chain);
        const double a = pd.area;
        closure += a * p.normal;
        total_area += a;
        vol3 += a * p.r_perp;
    }

    for (const auto& [edge, count] : directed) {
        const auto rev = directed.find({edge.second, edge.first});
        const int rcount = rev == directed.end() ? 0 : rev->second;
        if (count != 1 || rcount != 1) {
            std::ostringstream os;
            os << "edge (" << edge.first << "," << edge.second << ") traversed " << count
               << " time(s), reverse traversed " << rcount << " time(s): surface not closed and consistently oriented";
            fail(os.str());
        }
    }

    diag.volume = vol3 / 3.0;
    diag.closure_residual = total_area > 0 ? closure.norm() / total_area : 0.0;
    if (diag.closure_residual > 1e-12) {
        std::ostringstream os;
        os << "face normals do not close: residual " << diag.closure_residual;
        fail(os.str());
    }
    if (!(diag.volume > 0)) {
        std::ostringstream os;
        os << "negative volume " << diag.volume << ": face normals point inward";
        fail(os.str());
    }
    return diag;
}

double signed_volume(const PolyhedronMesh& mesh)
{
    double v = 0;
    for (std::size_t k = 0; k < mesh.faces.size(); ++k) {
        auto fit = fit_plane(mesh.face_chain(k));
        if (fit)
            v += 0.5 * fit->newell.norm() * fit->plane.r_perp;
    }
    return v / 3.0;
}

double volume(const PolyhedronMesh& mesh)
{
    const auto diag = validate_mesh(mesh);
    if (!diag.ok)
        throw Error(ErrorKind::InvalidMesh, diag.violations.front());
    return diag.volume;
}

EnclosingRadii enclosing_radii(const PolyhedronMesh& mesh)
{
    EnclosingRadii r;
    for (const auto& v : mesh.vertices)
        r.a = std::max(r.a, v.norm());
    for (std::size_t k = 0; k < mesh.faces.size(); ++k)
        r.b.push_back(enclosing_radii(mesh.face_chain(k)).b.front());
    return r;
}

RealVec3 center_of_gravity(const PolyhedronMesh& mesh)
{
    const RealVec3 c = vertex_mean(mesh.vertices);
    RealVec3 moment = RealVec3::Zero();
    double total = 0;
    for (std::size_t k = 0; k < mesh.faces.size(); ++k) {
        const auto& f = mesh.faces[k];
        const RealVec3 v0 = mesh.vertices[f[0]] - c;
        for (std::size_t i = 1; i + 1 < f.size(); ++i) {
            const RealVec3 v1 = mesh.vertices[f[i]] - c;
            const RealVec3 v2 = mesh.vertices[f[i + 1]] - c;
            const double w = v0.dot(v1.cross(v2)) / 6.0;
            moment += w * (v0 + v1 + v2) / 4.0;
            total += w;
        }
    }
    return c + moment / total;
}

PolyhedronMesh translate(const PolyhedronMesh& mesh, const RealVec3& v)
{
    PolyhedronMesh out = mesh;
    for (auto& x : out.vertices)
        x += v;
    return out;
}

PolyhedronMesh transform(const PolyhedronMesh& mesh, const Eigen::Matrix3d& m)
{
    PolyhedronMesh out = mesh;
    for (auto& x : out.vertices)
        x = m * x;
    if (m.determinant() < 0)
        for (auto& f : out.faces)
            std::reverse(f.begin(), f.end());
    return out;
}

std::optional<SymmetryPairing> detect_symmetry(const PolyhedronMesh& mesh)
{
    const std::size_t n = mesh.faces.size();
    if (n % 2 != 0)
        return std::nullopt;
    double a = 0;
    for (const auto& v : mesh.vertices)
        a = std::max(a, v.norm());
    const double tol = kSymmetryTol * a;

    std::vector<std::vector<RealVec3>> pts(n), neg(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (int idx : mesh.faces[k]) {
            pts[k].push_back(mesh.vertices[idx]);
            neg[k].push_back(-mesh.vertices[idx]);
        }
    }

    SymmetryPairing s;
    s.kind = SymmetryKind::CiPolyhedron;
    s.partner.assign(n, -1);
    for (std::size_t k = 0; k < n; ++k) {
        if (s.partner[k] >= 0)
            continue;
        for (std::size_t m = k + 1; m < n; ++m) {
            if (s.partner[m] < 0 && points_match(neg[k], pts[m], tol)) {
                s.partner[k] = static_cast<int>(m);
                s.partner[m] = static_cast<int>(k);
                s.representatives.push_back(static_cast<int>(k));
                break;
            }
        }
        if (s.partner[k] < 0)
            return std::nullopt;
    }
    s.half_count = static_cast<int>(n / 2);
    return s;
}

Polyhedron::Polyhedron(PolyhedronMesh mesh, const PolyhedronOptions& options)
    : mesh_(std::move(mesh))
{
    const auto diag = validate_mesh(mesh_, options.planarity_tol);
    if (!diag.ok) {
        std::string msg = diag.violations.front();
        if (diag.violations.size() > 1)
            msg += " (+" + std::to_string(diag.violations.size() - 1) + " more)";
        throw Error(ErrorKind::InvalidMesh, msg);
    }

    if (options.rehome_origin) {
        const RealVec3 cog = center_of_gravity(mesh_);
        if (cog.norm() > max_distance(mesh_.vertices, cog)) {
            shift_ = cog;
            mesh_ = translate(mesh_, -cog);
        }
    }

    PolygonOptions fo;
    fo.planarity_tol = options.planarity_tol;
    fo.rehome_origin = false;
    fo.detect_symmetry = true;
    faces_.reserve(mesh_.faces.size());
    for (std::size_t k = 0; k < mesh_.faces.size(); ++k)
        faces_.emplace_back(mesh_.face_chain(k), fo);

    double v3 = 0;
    for (const auto& f : faces_)
        v3 += f.area() * f.plane().r_perp;
    volume_ = v3 / 3.0;
    for (const auto& v : mesh_.vertices)
        radius_ = std::max(radius_, v.norm());
    if (options.detect_symmetry)
        symmetry_ = detect_symmetry(mesh_);
}

} // namespace ff
