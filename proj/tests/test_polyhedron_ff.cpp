#include "formfactor/polyhedron_ff.hpp"
#include "formfactor/shapes.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <numbers>

using namespace ff;
using fftest::cube_exact;
using fftest::rel_err;

TEST_CASE("frozen values: unit cube")
{
    const Polyhedron cube(shapes::cube());
    const double pi = std::numbers::pi;
    // (2/pi)^3
    CHECK(rel_err(ff_polyhedron(ComplexVec3(pi, pi, pi), cube).value, 0.2580122754655959) < 1e-14);
    const auto zero = ff_polyhedron(ComplexVec3::Zero(), cube);
    CHECK(zero.value == complex(1.0));
    CHECK(zero.method == Method::QZero);
}

TEST_CASE("cube matches the separable product at random complex q")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 1.7);
    const Polyhedron cube(shapes::cube());
    EvalConfig generic;
    generic.use_symmetry = false;
    for (int i = 0; i < 300; ++i) {
        const double s = std::pow(10.0, u(rng));
        const RealVec3 d = fftest::random_unit(rng);
        ComplexVec3 q = to_complex(RealVec3(s * d));
        if (i % 3 == 0)
            q += complex(0, 0.05 * s) * to_complex(fftest::random_unit(rng));
        CHECK(rel_err(ff_polyhedron(q, cube).value, cube_exact(q)) < 1e-12);
        CHECK(rel_err(ff_polyhedron(q, cube, generic).value, cube_exact(q)) < 1e-12);
    }
}

TEST_CASE("series coefficients are moments")
{
    const Polyhedron cube(shapes::cube());
    const ComplexVec3 q(1, 0, 0);
    CHECK(std::abs(coeff_Fn(1, q, cube)) < 1e-16);
    CHECK(rel_err(coeff_Fn(2, q, cube), 1.0 / 24) < 1e-14);
    CHECK(rel_err(coeff_Fn(4, q, cube), 1.0 / 1920) < 1e-14); // (1/80)/24
    const ComplexVec3 q2(1, 1, 0);
    CHECK(rel_err(coeff_Fn(2, q2, cube), 1.0 / 12) < 1e-14);
}

TEST_CASE("series and analytic paths agree on the suite")
{
    std::mt19937_64 rng(9);
    for (const auto& spec : shapes::default_suite()) {
        const Polyhedron p(std::get<PolyhedronMesh>(shapes::make(spec)));
        for (double s : {1e-3, 1e-2, 0.1, 0.5}) {
            const RealVec3 d = fftest::random_unit(rng);
            const ComplexVec3 q = to_complex(RealVec3(s / p.radius() * d));
            const auto series = ff_polyhedron_series(q, p, {});
            REQUIRE(series.converged);
            CHECK(rel_err(series.value, ff_polyhedron_analytic(q, p, {}, nullptr)) < 1e-10);
        }
    }
}

TEST_CASE("exact limit F(0) = V")
{
    for (const auto& spec : shapes::default_suite()) {
        const Polyhedron p(std::get<PolyhedronMesh>(shapes::make(spec)));
        CHECK(ff_polyhedron(ComplexVec3::Zero(), p).value == complex(p.volume()));
    }
}

TEST_CASE("inversion-center path equals the generic sum")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1.3);
    EvalConfig generic;
    generic.use_symmetry = false;
    for (const auto& m : {shapes::cube(), shapes::icosahedron(), shapes::truncated_cube()}) {
        const Polyhedron p(m);
        REQUIRE(p.symmetry().has_value());
        for (int i = 0; i < 50; ++i) {
            const double s = std::pow(10.0, u(rng)) / p.radius();
            ComplexVec3 q = to_complex(RealVec3(s * fftest::random_unit(rng)));
            q += complex(0, 0.05 * s) * to_complex(fftest::random_unit(rng));
            const complex ci = ff_polyhedron_ci(q, p, *p.symmetry(), {}, nullptr);
            CHECK(rel_err(ci, ff_polyhedron(q, p, generic).value) <= 1e-12);
        }
    }
}

TEST_CASE("inversion path rejects a bad pairing")
{
    const Polyhedron cube(shapes::cube());
    SymmetryPairing bad = *cube.symmetry();
    std::swap(bad.partner[0], bad.partner[1]);
    CHECK_THROWS_AS((void)ff_polyhedron_ci(ComplexVec3(1, 2, 3), cube, bad, {}, nullptr), Error);
    const Polyhedron tet(shapes::tetrahedron());
    CHECK_THROWS_AS((void)ff_polyhedron_ci(ComplexVec3(1, 2, 3), tet, bad, {}, nullptr), Error);
}

TEST_CASE("prism formula matches the extruded mesh")
{
    const auto hex = shapes::regular_polygon(6, 1.0);
    const Polygon base(hex);
    const Polyhedron prism(shapes::regular_prism(6, 1.0, 0.8));
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        const ComplexVec3 q = to_complex(RealVec3(3.0 * fftest::random_unit(rng)));
        CHECK(rel_err(ff_prism(q, base, 0.8), ff_polyhedron(q, prism).value) < 1e-12);
    }
    CHECK_THROWS_AS((void)ff_prism(ComplexVec3(1, 0, 0), base, -1.0), Error);
}

TEST_CASE("translation multiplies by a phase")
{
    const RealVec3 v(0.3, -1.2, 0.7);
    const Polyhedron p(shapes::truncated_tetrahedron_fig());
    const Polyhedron moved(translate(shapes::truncated_tetrahedron_fig(), v));
    const ComplexVec3 q(complex(1.1, 0.02), 0.4, complex(-2.0, 0));
    const complex phase = std::exp(complex(0, 1) * dot_bilinear(q, v));
    CHECK(rel_err(ff_polyhedron(q, moved).value, phase * ff_polyhedron(q, p).value) < 1e-13);
}

TEST_CASE("trace records per-face methods on the generic path")
{
    const Polyhedron tet(shapes::truncated_tetrahedron_fig());
    MethodTrace t;
    (void)ff_polyhedron(ComplexVec3(1, 2, 3), tet, {}, &t);
    CHECK(t.method == Method::Analytic);
    CHECK(t.faces.size() == 5);
    (void)ff_polyhedron(ComplexVec3(1e-4, 0, 0), tet, {}, &t);
    CHECK(t.method == Method::SeriesFullQ);
    CHECK(t.faces.empty());
}

TEST_CASE("non-convergence and bad input are reported")
{
    const Polyhedron tet(shapes::tetrahedron());
    EvalConfig cfg;
    cfg.threshold_polyhedron = 0.95;
    cfg.max_order = 4;
    CHECK_THROWS_AS((void)ff_polyhedron(ComplexVec3(0.9 / tet.radius(), 0, 0), tet, cfg), Error);
    CHECK_THROWS_AS((void)ff_polyhedron(ComplexVec3(INFINITY, 0, 0), tet), Error);
    CHECK_THROWS_AS((void)ff_polyhedron_analytic(ComplexVec3::Zero(), tet, {}, nullptr), Error);
}
