#include "formfactor/oracle.hpp"
#include "formfactor/shapes.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <numbers>

using namespace ff;
using fftest::cube_exact;
using fftest::rel_err;

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly")
{
    for (int n : {1, 2, 5, 12, 48}) {
        const auto g = oracle::gauss_legendre01(n);
        double wsum = 0;
        for (double w : g.weights)
            wsum += w;
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
        for (int p = 0; p < 2 * n; ++p) {
            double s = 0;
            for (int i = 0; i < n; ++i)
                s += g.weights[static_cast<std::size_t>(i)] * std::pow(g.nodes[static_cast<std::size_t>(i)], p);
            CHECK(s == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("polygon quadrature: square closed form")
{
    const auto sq = fftest::unit_square();
    const auto r = oracle::quad_polygon(ComplexVec3(std::numbers::pi, 0, 0), sq, 1e-12);
    CHECK(rel_err(r.value, 2 / std::numbers::pi) < 1e-12);
    const ComplexVec3 q(complex(3, 0.2), complex(-7, 0), 0.0);
    CHECK(rel_err(oracle::quad_polygon(q, sq, 1e-12).value, sinc(q(0) / 2.0) * sinc(q(1) / 2.0)) < 1e-11);
    CHECK(rel_err(oracle::quad_polygon(ComplexVec3::Zero(), shapes::triangle_edge_along_x(), 1e-12).value,
                  std::sqrt(3.0) / 4) < 1e-14);
}

TEST_CASE("polyhedron quadrature: cube closed form")
{
    const auto cube = shapes::cube();
    for (const ComplexVec3& q : {ComplexVec3(std::numbers::pi, 0, 0), ComplexVec3(1, 2, 3),
                                 ComplexVec3(complex(4, 0.3), complex(-2, 0), complex(0.5, -0.1))}) {
        const auto r = oracle::quad_polyhedron(q, cube, 1e-11);
        CHECK(rel_err(r.value, cube_exact(q)) < 1e-10);
        CHECK(r.evaluations > 0);
    }
    CHECK(rel_err(oracle::quad_polyhedron(ComplexVec3::Zero(), shapes::dodecahedron(), 1e-12).value,
                  (15 + 7 * std::sqrt(5.0)) / 4) < 1e-13);
}

TEST_CASE("guards")
{
    CHECK_THROWS_AS((void)oracle::quad_polyhedron(ComplexVec3(500, 0, 0), shapes::cube(), 1e-10), Error);
    CHECK_THROWS_AS((void)oracle::quad_polygon(ComplexVec3(1000, 0, 0), fftest::unit_square(), 1e-10), Error);
    CHECK_THROWS_AS((void)oracle::mc_polyhedron(ComplexVec3(1, 0, 0), shapes::cube(), 100, 1), Error);

    // U-shaped prism: its center of gravity lies in the notch.
    const VertexChain u{{{0, 0, 0}, {3, 0, 0}, {3, 3, 0}, {2, 3, 0}, {2, 0.5, 0}, {1, 0.5, 0}, {1, 3, 0}, {0, 3, 0}}};
    try {
        (void)oracle::quad_polyhedron(ComplexVec3(1, 0, 0), fftest::extrude(u, 1.0), 1e-8);
        FAIL("expected NotStarShaped");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotStarShaped);
    }
}

TEST_CASE("winding number")
{
    const auto cube = shapes::cube();
    CHECK(oracle::winding_number(cube, RealVec3(0.1, -0.2, 0.3)) == doctest::Approx(1.0));
    CHECK(oracle::winding_number(cube, RealVec3(0.7, 0, 0)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Monte Carlo is deterministic and within its error bars")
{
    const auto cube = shapes::cube();
    const ComplexVec3 q(1.5, -0.5, 2.0);
    const auto a = oracle::mc_polyhedron(q, cube, 20000, 42);
    const auto b = oracle::mc_polyhedron(q, cube, 20000, 42);
    CHECK(a.value == b.value);
    CHECK(std::abs(a.value - cube_exact(q)) < 5 * a.est_error + 1e-3);

    // A non-star-shaped solid is still handled by sampling.
    const VertexChain u{{{0, 0, 0}, {3, 0, 0}, {3, 3, 0}, {2, 3, 0}, {2, 0.5, 0}, {1, 0.5, 0}, {1, 3, 0}, {0, 3, 0}}};
    const auto v = oracle::mc_polyhedron(ComplexVec3::Zero(), fftest::extrude(u, 1.0), 20000, 7);
    CHECK(std::abs(v.value.real() - volume(fftest::extrude(u, 1.0))) < 5 * v.est_error + 0.05);
}
