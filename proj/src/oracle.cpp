#include "formfactor/oracle.hpp"

#include "formfactor/errors.hpp"

#include <array>
#include <numbers>
#include <random>

namespace ff::oracle {

namespace {

const complex I{0, 1};

// Orders tried in turn; each level is a complete evaluation.
constexpr std::array<int, 9> kTriangleOrders{8, 12, 16, 24, 32, 48, 64, 96, 128};
constexpr std::array<int, 8> kTetOrders{6, 8, 11, 15, 20, 27, 36, 48};

struct Triangle {
    RealVec3 p0, p1, p2;
    double weight; // signed area
};

struct Tet {
    RealVec3 p0, p1, p2, p3;
    double weight; // signed volume
};

complex integrate_triangle(const ComplexVec3& q, const Triangle& t, const GaussRule& g)
{
    const RealVec3 e1 = t.p1 - t.p0;
    const RealVec3 e2 = t.p2 - t.p0;
    complex s = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double u = g.nodes[i];
        const double ju = (1 - u) * g.weights[i];
        complex row = 0;
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            const RealVec3 r = t.p0 + u * e1 + g.nodes[k] * (1 - u) * e2;
            row += g.weights[k] * std::exp(I * dot_bilinear(q, r));
        }
        s += ju * row;
    }
    return 2.0 * t.weight * s;
}

complex integrate_tet(const ComplexVec3& q, const Tet& t, const GaussRule& g)
{
    const RealVec3 e1 = t.p1 - t.p0;
    const RealVec3 e2 = t.p2 - t.p0;
    const RealVec3 e3 = t.p3 - t.p0;
    const std::size_t n = g.nodes.size();
    complex s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = g.nodes[i];
        complex si = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = g.nodes[j];
            const RealVec3 base = t.p0 + u * e1 + v * (1 - u) * e2;
            const RealVec3 dz = (1 - u) * (1 - v) * e3;
            complex sj = 0;
            for (std::size_t k = 0; k < n; ++k)
                sj += g.weights[k] * std::exp(I * dot_bilinear(q, base + g.nodes[k] * dz));
            si += g.weights[j] * (1 - v) * sj;
        }
        s += g.weights[i] * (1 - u) * (1 - u) * si;
    }
    return 6.0 * t.weight * s;
}

template <typename Simplex, typename Integrate, std::size_t N>
OracleResult refine(const ComplexVec3& q, const std::vector<Simplex>& simplices, double measure, double tol,
                    const std::array<int, N>& orders, int dim, Integrate integrate)
{
    OracleResult res;
    complex previous;
    bool have_previous = false;
    for (int n : orders) {
        long nodes = static_cast<long>(simplices.size());
        for (int d = 0; d < dim; ++d)
            nodes *= n;
        if (nodes > kNodeBudget)
            break;
        const GaussRule g = gauss_legendre01(n);
        complex total = 0;
        for (const auto& s : simplices)
            total += integrate(q, s, g);
        res.evaluations += nodes;
        if (have_previous) {
            const double diff = std::abs(total - previous);
            if (diff < tol * (std::abs(total) + measure)) {
                res.value = total;
                res.est_error = diff;
                return res;
            }
        }
        previous = total;
        have_previous = true;
    }
    throw Error(ErrorKind::BudgetExceeded, "quadrature did not reach the requested tolerance within 2^20 nodes");
}

double max_radius(const std::vector<RealVec3>& vs)
{
    double a = 0;
    for (const auto& v : vs)
        a = std::max(a, v.norm());
    return a;
}

} // namespace

GaussRule gauss_legendre01(int n)
{
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        g.nodes[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
        g.weights[i] = v0 * v0; // 2 v0^2 on [-1,1], halved for [0,1]
    }
    return g;
}

OracleResult quad_polygon(const ComplexVec3& q, const VertexChain& chain, double tol)
{
    const Plane plane = plane_of(chain);
    if (max_radius(chain.vertices) * safe_norm(q) > 200)
        throw Error(ErrorKind::BudgetExceeded, "a|q| exceeds 200");
    const RealVec3 c = center_of_gravity(chain);
    std::vector<Triangle> tris;
    double total_area = 0;
    const long n = static_cast<long>(chain.size());
    for (long j = 0; j < n; ++j) {
        const RealVec3& u = chain.at(j - 1);
        const RealVec3& v = chain.at(j);
        const double w = 0.5 * plane.normal.dot((u - c).cross(v - c));
        tris.push_back({c, u, v, w});
        total_area += w;
    }
    return refine(q, tris, std::abs(total_area), tol, kTriangleOrders, 2, integrate_triangle);
}

OracleResult quad_polyhedron(const ComplexVec3& q, const PolyhedronMesh& mesh, double tol)
{
    if (max_radius(mesh.vertices) * safe_norm(q) > 100)
        throw Error(ErrorKind::BudgetExceeded, "a|q| exceeds 100");
    const RealVec3 c = center_of_gravity(mesh);
    std::vector<Tet> tets;
    double vol = 0;
    for (const auto& f : mesh.faces) {
        const RealVec3& v0 = mesh.vertices[f[0]];
        for (std::size_t i = 1; i + 1 < f.size(); ++i) {
            const RealVec3& v1 = mesh.vertices[f[i]];
            const RealVec3& v2 = mesh.vertices[f[i + 1]];
            const double w = (v0 - c).dot((v1 - c).cross(v2 - c)) / 6.0;
            if (!(w > 0))
                throw Error(ErrorKind::NotStarShaped, "tetrahedron from the center of gravity has non-positive volume");
            tets.push_back({c, v0, v1, v2, w});
            vol += w;
        }
    }
    return refine(q, tets, vol, tol, kTetOrders, 3, integrate_tet);
}

double winding_number(const PolyhedronMesh& mesh, const RealVec3& p)
{
    double omega = 0;
    for (const auto& f : mesh.faces) {
        const RealVec3 a = mesh.vertices[f[0]] - p;
        for (std::size_t i = 1; i + 1 < f.size(); ++i) {
            const RealVec3 b = mesh.vertices[f[i]] - p;
            const RealVec3 c = mesh.vertices[f[i + 1]] - p;
            const double la = a.norm(), lb = b.norm(), lc = c.norm();
            const double num = a.dot(b.cross(c));
            const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
            omega += 2.0 * std::atan2(num, den);
        }
    }
    return omega / (4.0 * std::numbers::pi);
}

OracleResult mc_polyhedron(const ComplexVec3& q, const PolyhedronMesh& mesh, long n, std::uint64_t seed)
{
    if (n < 10000)
        throw Error(ErrorKind::InvalidSpec, "Monte Carlo needs at least 10^4 samples");
    RealVec3 lo = mesh.vertices.front(), hi = mesh.vertices.front();
    for (const auto& v : mesh.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    const RealVec3 ext = hi - lo;
    const double box = ext.prod();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    complex sum = 0;
    double sum_sq = 0;
    for (long i = 0; i < n; ++i) {
        RealVec3 r;
        r << lo.x() + ext.x() * uni(rng), lo.y() + ext.y() * uni(rng), lo.z() + ext.z() * uni(rng);
        if (winding_number(mesh, r) > 0.5) {
            const complex x = std::exp(I * dot_bilinear(q, r));
            sum += x;
            sum_sq += std::norm(x);
        }
    }
    const double nn = static_cast<double>(n);
    const complex mean = sum / nn;
    const double var = std::max(0.0, sum_sq / nn - std::norm(mean));
    OracleResult res;
    res.value = box * mean;
    res.est_error = box * std::sqrt(var / nn);
    res.evaluations = n;
    return res;
}

} // namespace ff::oracle
