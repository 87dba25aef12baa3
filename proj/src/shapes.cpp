#include "formfactor/shapes.hpp"

#include "formfactor/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace ff::shapes {

namespace {

constexpr double pi = std::numbers::pi;
const double phi = std::numbers::phi;

void require(bool ok, const std::string& why)
{
    if (!ok)
        throw Error(ErrorKind::InvalidSpec, why);
}

PolyhedronMesh scaled(PolyhedronMesh m, double s)
{
    for (auto& v : m.vertices)
        v *= s;
    return m;
}

std::vector<RealVec3> with_signs(const RealVec3& p)
{
    std::vector<RealVec3> out;
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1}) {
                RealVec3 v(sx * p.x(), sy * p.y(), sz * p.z());
                bool dup = false;
                for (const auto& w : out)
                    dup = dup || (w - v).norm() == 0;
                if (!dup)
                    out.push_back(v);
            }
    return out;
}

std::vector<RealVec3> cyclic_perms(const RealVec3& p)
{
    std::vector<RealVec3> out;
    for (int k = 0; k < 3; ++k)
        for (const auto& v : with_signs(RealVec3(p((k) % 3), p((k + 1) % 3), p((k + 2) % 3))))
            out.push_back(v);
    return out;
}

std::vector<RealVec3> all_perms(const RealVec3& p)
{
    std::vector<RealVec3> out;
    std::array<int, 3> idx{0, 1, 2};
    do {
        for (const auto& v : with_signs(RealVec3(p(idx[0]), p(idx[1]), p(idx[2])))) {
            bool dup = false;
            for (const auto& w : out)
                dup = dup || (w - v).norm() == 0;
            if (!dup)
                out.push_back(v);
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

} // namespace

std::string to_string(ShapeKind k)
{
    switch (k) {
    case ShapeKind::regular_polygon: return "regular_polygon";
    case ShapeKind::box: return "box";
    case ShapeKind::regular_prism: return "regular_prism";
    case ShapeKind::pyramid_frustum: return "pyramid_frustum";
    case ShapeKind::tetrahedron: return "tetrahedron";
    case ShapeKind::cube: return "cube";
    case ShapeKind::octahedron: return "octahedron";
    case ShapeKind::dodecahedron: return "dodecahedron";
    case ShapeKind::icosahedron: return "icosahedron";
    case ShapeKind::cuboctahedron: return "cuboctahedron";
    case ShapeKind::truncated_cube: return "truncated_cube";
    case ShapeKind::truncated_tetrahedron_fig: return "truncated_tetrahedron_fig";
    }
    return "unknown";
}

std::optional<ShapeKind> kind_from_string(const std::string& s)
{
    for (int i = 0; i <= static_cast<int>(ShapeKind::truncated_tetrahedron_fig); ++i) {
        const auto k = static_cast<ShapeKind>(i);
        if (to_string(k) == s)
            return k;
    }
    return std::nullopt;
}

double ShapeSpec::get(const std::string& key, double fallback) const
{
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::string ShapeSpec::label() const
{
    std::ostringstream os;
    os << to_string(kind);
    for (const auto& [k, v] : params)
        os << ' ' << k << '=' << v;
    return os.str();
}

VertexChain regular_polygon(int J, double L, std::optional<double> phase)
{
    require(J >= 3, "regular polygon needs at least 3 vertices");
    require(L > 0, "edge length must be positive");
    const double r = L / (2 * std::sin(pi / J));
    const double p0 = phase.value_or(-pi / J);
    VertexChain c;
    for (int k = 0; k < J; ++k) {
        const double th = p0 + 2 * pi * k / J;
        c.vertices.emplace_back(r * std::cos(th), r * std::sin(th), 0.0);
    }
    return c;
}

VertexChain triangle_edge_along_x(double L)
{
    return regular_polygon(3, L, -pi / 2 - pi / 3);
}

PolyhedronMesh pyramid_frustum(int J, double base_edge, double alpha_deg, double H, double base_width)
{
    require(J == 2 || J >= 3, "fold J must be 2 or at least 3");
    require(base_edge > 0, "base edge must be positive");
    require(alpha_deg > 0 && alpha_deg <= 90, "dihedral angle must lie in (0, 90] degrees");
    require(H > 0, "height must be positive");

    // Inward displacement of each side at height H.
    const double shrink = alpha_deg == 90 ? 0.0 : H / std::tan(alpha_deg * pi / 180);

    std::vector<RealVec3> base;
    std::vector<RealVec3> top;
    if (J == 2) {
        const double w = base_width > 0 ? base_width : base_edge;
        const double hx = base_edge / 2, hy = w / 2;
        require(shrink < std::min(hx, hy), "height must stay below the apex");
        const double sx[4] = {1, 1, -1, -1};
        const double sy[4] = {-1, 1, 1, -1};
        for (int k = 0; k < 4; ++k) {
            base.emplace_back(sx[k] * hx, sy[k] * hy, 0.0);
            top.emplace_back(sx[k] * (hx - shrink), sy[k] * (hy - shrink), H);
        }
    } else {
        const auto chain = regular_polygon(J, base_edge);
        const double apothem = base_edge / (2 * std::tan(pi / J));
        require(shrink < apothem, "height must stay below the apex");
        const double s = 1 - shrink / apothem;
        for (const auto& v : chain.vertices) {
            base.push_back(v);
            top.emplace_back(s * v.x(), s * v.y(), H);
        }
    }

    const int n = static_cast<int>(base.size());
    PolyhedronMesh m;
    std::ostringstream name;
    name << "pyramid_frustum J=" << J << " L=" << base_edge << " alpha=" << alpha_deg << " H=" << H;
    m.name = name.str();
    m.vertices = base;
    m.vertices.insert(m.vertices.end(), top.begin(), top.end());
    std::vector<int> bottom, upper;
    for (int k = n - 1; k >= 0; --k)
        bottom.push_back(k);
    for (int k = 0; k < n; ++k)
        upper.push_back(n + k);
    m.faces.push_back(bottom);
    m.faces.push_back(upper);
    for (int k = 0; k < n; ++k) {
        const int k1 = (k + 1) % n;
        m.faces.push_back({k, k1, n + k1, n + k});
    }
    return m;
}

PolyhedronMesh truncated_tetrahedron_fig()
{
    auto m = pyramid_frustum(3, 1.0, 72.0, 0.5);
    m.name = "truncated_tetrahedron_fig";
    return m;
}

PolyhedronMesh box(double lx, double ly, double lz)
{
    require(lx > 0 && ly > 0 && lz > 0, "box extents must be positive");
    std::vector<RealVec3> pts = with_signs(RealVec3(lx / 2, ly / 2, lz / 2));
    return convex_hull(pts, "box");
}

PolyhedronMesh regular_prism(int J, double L, double H)
{
    require(H > 0, "height must be positive");
    const auto base = regular_polygon(J, L);
    PolyhedronMesh m;
    m.name = "regular_prism";
    for (const auto& v : base.vertices)
        m.vertices.emplace_back(v.x(), v.y(), -H / 2);
    for (const auto& v : base.vertices)
        m.vertices.emplace_back(v.x(), v.y(), H / 2);
    std::vector<int> bottom, upper;
    for (int k = J - 1; k >= 0; --k)
        bottom.push_back(k);
    for (int k = 0; k < J; ++k)
        upper.push_back(J + k);
    m.faces.push_back(bottom);
    m.faces.push_back(upper);
    for (int k = 0; k < J; ++k) {
        const int k1 = (k + 1) % J;
        m.faces.push_back({k, k1, J + k1, J + k});
    }
    return m;
}

PolyhedronMesh tetrahedron(double L)
{
    std::vector<RealVec3> p{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    return scaled(convex_hull(p, "tetrahedron"), L / (2 * std::sqrt(2.0)));
}

PolyhedronMesh cube(double L)
{
    auto m = box(L, L, L);
    m.name = "cube";
    return m;
}

PolyhedronMesh octahedron(double L)
{
    return scaled(convex_hull(all_perms({1, 0, 0}), "octahedron"), L / std::sqrt(2.0));
}

PolyhedronMesh icosahedron(double L)
{
    return scaled(convex_hull(cyclic_perms({0, 1, phi}), "icosahedron"), L / 2);
}

PolyhedronMesh dodecahedron(double L)
{
    auto p = with_signs({1, 1, 1});
    for (const auto& v : cyclic_perms({0, 1 / phi, phi}))
        p.push_back(v);
    return scaled(convex_hull(p, "dodecahedron"), L * phi / 2);
}

PolyhedronMesh cuboctahedron(double L)
{
    return scaled(convex_hull(all_perms({1, 1, 0}), "cuboctahedron"), L / std::sqrt(2.0));
}

PolyhedronMesh truncated_cube(double L)
{
    const double xi = std::sqrt(2.0) - 1;
    return scaled(convex_hull(all_perms({xi, 1, 1}), "truncated_cube"), L / (2 * xi));
}

PolyhedronMesh convex_hull(const std::vector<RealVec3>& points, std::string name)
{
    const std::size_t n = points.size();
    require(n >= 4, "convex hull needs at least 4 points");
    double scale = 0;
    for (const auto& p : points)
        scale = std::max(scale, p.norm());
    const double tol = 1e-9 * scale;

    std::set<std::vector<int>> seen;
    PolyhedronMesh m;
    m.name = std::move(name);
    m.vertices = points;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                RealVec3 nrm = (points[j] - points[i]).cross(points[k] - points[i]);
                if (nrm.norm() <= tol * scale)
                    continue;
                nrm.normalize();
                const double d = nrm.dot(points[i]);
                bool below = true, above = true;
                std::vector<int> on;
                for (std::size_t m2 = 0; m2 < n; ++m2) {
                    const double s = nrm.dot(points[m2]) - d;
                    below = below && s <= tol;
                    above = above && s >= -tol;
                    if (std::abs(s) <= tol)
                        on.push_back(static_cast<int>(m2));
                }
                if (!below && !above)
                    continue;
                if (!below)
                    nrm = -nrm;
                std::vector<int> key = on;
                std::sort(key.begin(), key.end());
                if (!seen.insert(key).second)
                    continue;

                RealVec3 c = RealVec3::Zero();
                for (int idx : on)
                    c += points[idx];
                c /= static_cast<double>(on.size());
                const RealVec3 e1 = (points[on[0]] - c).normalized();
                const RealVec3 e2 = nrm.cross(e1);
                std::sort(on.begin(), on.end(), [&](int a, int b) {
                    const RealVec3 pa = points[a] - c, pb = points[b] - c;
                    return std::atan2(e2.dot(pa), e1.dot(pa)) < std::atan2(e2.dot(pb), e1.dot(pb));
                });
                m.faces.push_back(on);
            }
        }
    }
    return m;
}

PolyhedronMesh with_circumradius(const PolyhedronMesh& mesh, double a)
{
    double r = 0;
    for (const auto& v : mesh.vertices)
        r = std::max(r, v.norm());
    return scaled(mesh, a / r);
}

Figure make(const ShapeSpec& spec)
{
    const double L = spec.get("edge", 1.0);
    Figure fig;
    switch (spec.kind) {
    case ShapeKind::regular_polygon:
        fig = regular_polygon(static_cast<int>(spec.get("fold", 3)), L);
        break;
    case ShapeKind::box:
        fig = box(spec.get("lx", L), spec.get("ly", L), spec.get("lz", L));
        break;
    case ShapeKind::regular_prism:
        fig = regular_prism(static_cast<int>(spec.get("fold", 6)), L, spec.get("height", L));
        break;
    case ShapeKind::pyramid_frustum:
        fig = pyramid_frustum(static_cast<int>(spec.get("fold", 4)), L, spec.get("alpha", 60), spec.get("height", 0.5),
                              spec.get("width", 0));
        break;
    case ShapeKind::tetrahedron: fig = tetrahedron(L); break;
    case ShapeKind::cube: fig = cube(L); break;
    case ShapeKind::octahedron: fig = octahedron(L); break;
    case ShapeKind::dodecahedron: fig = dodecahedron(L); break;
    case ShapeKind::icosahedron: fig = icosahedron(L); break;
    case ShapeKind::cuboctahedron: fig = cuboctahedron(L); break;
    case ShapeKind::truncated_cube: fig = truncated_cube(L); break;
    case ShapeKind::truncated_tetrahedron_fig: fig = truncated_tetrahedron_fig(); break;
    }

    if (auto* chain = std::get_if<VertexChain>(&fig)) {
        const auto d = validate_polygon(*chain);
        require(d.ok, d.ok ? "" : d.messages.front());
    } else {
        auto& mesh = std::get<PolyhedronMesh>(fig);
        mesh.name = spec.label();
        const auto d = validate_mesh(mesh);
        require(d.ok, d.ok ? "" : d.violations.front());
    }
    return fig;
}

std::vector<ShapeSpec> default_suite()
{
    using K = ShapeKind;
    return {
        {K::pyramid_frustum, {{"fold", 2}, {"edge", 1}, {"width", 1.5}, {"alpha", 60}, {"height", 0.3}}},
        {K::pyramid_frustum, {{"fold", 3}, {"edge", 1}, {"alpha", 72}, {"height", 0.5}}},
        {K::pyramid_frustum, {{"fold", 4}, {"edge", 1}, {"alpha", 60}, {"height", 0.4}}},
        {K::pyramid_frustum, {{"fold", 6}, {"edge", 1}, {"alpha", 60}, {"height", 0.5}}},
        {K::cuboctahedron, {{"edge", 1}}},
        {K::truncated_cube, {{"edge", 1}}},
        {K::dodecahedron, {{"edge", 1}}},
        {K::icosahedron, {{"edge", 1}}},
    };
}

} // namespace ff::shapes
