#include "formfactor/mesh.hpp"
#include "formfactor/shapes.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace ff;
using fftest::unit_square;

TEST_CASE("plane, area and edges of the unit square")
{
    const auto sq = unit_square();
    const Plane p = plane_of(sq);
    CHECK(p.normal.isApprox(RealVec3::UnitZ()));
    CHECK(p.r_perp == doctest::Approx(0).epsilon(1e-15));
    CHECK(area(sq) == doctest::Approx(1.0).epsilon(1e-15));
    const auto e = edge_midpoint_rep(sq);
    REQUIRE(e.E.size() == 4);
    // E_0 = (V_0 - V_3)/2, R_0 = (V_0 + V_3)/2
    CHECK(e.E[0].isApprox(RealVec3(0, -0.5, 0)));
    CHECK(e.R[0].isApprox(RealVec3(-0.5, 0, 0)));
    CHECK(enclosing_radii(sq).a == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("polygon validation reports violations")
{
    SUBCASE("degenerate")
    {
        const VertexChain line{{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}};
        const auto d = validate_polygon(line);
        CHECK_FALSE(d.ok);
        CHECK(d.violations.front() == ErrorKind::DegenerateChain);
        CHECK_THROWS_AS((void)plane_of(line), Error);
    }
    SUBCASE("not planar")
    {
        const VertexChain warped{{{0, 0, 0}, {1, 0, 0}, {1, 1, 0.1}, {0, 1, 0}}};
        const auto d = validate_polygon(warped);
        CHECK_FALSE(d.ok);
        CHECK(d.violations.front() == ErrorKind::NotPlanar);
    }
    SUBCASE("negative winding against a reference normal")
    {
        auto sq = unit_square();
        std::reverse(sq.vertices.begin(), sq.vertices.end());
        const auto d = validate_polygon(sq, kDefaultPlanarityTol, RealVec3::UnitZ());
        CHECK_FALSE(d.ok);
        CHECK(d.violations.front() == ErrorKind::NegativeWinding);
        CHECK(d.area == doctest::Approx(-1.0));
    }
    SUBCASE("non-finite")
    {
        const VertexChain bad{{{0, 0, 0}, {1, 0, 0}, {NAN, 1, 0}}};
        CHECK(validate_polygon(bad).violations.front() == ErrorKind::NonFiniteInput);
    }
    SUBCASE("self intersection only in strict mode")
    {
        const VertexChain bowtie{{{0, 0, 0}, {2, 2, 0}, {2, 0, 0}, {0, 1, 0}}};
        CHECK(is_self_intersecting(bowtie));
        CHECK_FALSE(is_self_intersecting(unit_square()));
        PolygonOptions strict;
        strict.strict = true;
        CHECK_THROWS_AS((Polygon{bowtie, strict}), Error);
    }
}

TEST_CASE("center of gravity and re-homing of a far polygon")
{
    VertexChain sq = translate(unit_square(), RealVec3(10, 0, 3));
    CHECK(center_of_gravity(sq).isApprox(RealVec3(10, 0, 3)));
    const Polygon p(sq);
    CHECK(p.origin_shift().isApprox(RealVec3(10, 0, 3)));
    CHECK(p.radius() == doctest::Approx(std::sqrt(0.5)));

    PolygonOptions keep;
    keep.rehome_origin = false;
    const Polygon q(sq, keep);
    CHECK(q.origin_shift().isZero());
}

TEST_CASE("S2 detection on polygons")
{
    CHECK(detect_symmetry(unit_square()).has_value());
    const auto hex = shapes::regular_polygon(6, 1.0);
    const auto s = detect_symmetry(hex);
    REQUIRE(s.has_value());
    CHECK(s->half_count == 3);
    CHECK_FALSE(detect_symmetry(shapes::triangle_edge_along_x()).has_value());
    CHECK_FALSE(detect_symmetry(translate(unit_square(), RealVec3(0.1, 0, 0))).has_value());
}

TEST_CASE("mesh validation")
{
    const auto cube = shapes::cube();
    const auto d = validate_mesh(cube);
    CHECK(d.ok);
    CHECK(d.volume == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.closure_residual < 1e-15);

    SUBCASE("open mesh")
    {
        auto open = cube;
        open.faces.pop_back();
        CHECK_FALSE(validate_mesh(open).ok);
        CHECK_THROWS_AS((void)volume(open), Error);
    }
    SUBCASE("inward normals")
    {
        auto inward = cube;
        for (auto& f : inward.faces)
            std::reverse(f.begin(), f.end());
        const auto di = validate_mesh(inward);
        CHECK_FALSE(di.ok);
        CHECK(di.volume == doctest::Approx(-1.0));
    }
    SUBCASE("one flipped face")
    {
        auto bad = cube;
        std::reverse(bad.faces[2].begin(), bad.faces[2].end());
        CHECK_FALSE(validate_mesh(bad).ok);
    }
    SUBCASE("index out of range")
    {
        auto bad = cube;
        bad.faces[0][0] = 99;
        CHECK_FALSE(validate_mesh(bad).ok);
        CHECK_THROWS_AS(Polyhedron{bad}, Error);
    }
}

TEST_CASE("volume agrees with a centroid fan of signed tetrahedra")
{
    for (const auto& spec : shapes::default_suite()) {
        const auto mesh = std::get<PolyhedronMesh>(shapes::make(spec));
        RealVec3 c = RealVec3::Zero();
        for (const auto& v : mesh.vertices)
            c += v;
        c /= static_cast<double>(mesh.vertices.size());
        double fan = 0;
        for (const auto& f : mesh.faces)
            for (std::size_t i = 1; i + 1 < f.size(); ++i)
                fan += (mesh.vertices[f[0]] - c).dot((mesh.vertices[f[i]] - c).cross(mesh.vertices[f[i + 1]] - c)) / 6;
        CHECK(std::abs(volume(mesh) - fan) <= 1e-12 * fan);
    }
}

TEST_CASE("center of gravity of a frustum lies on the axis")
{
    const auto m = shapes::pyramid_frustum(4, 1.0, 90.0, 1.0);
    CHECK(center_of_gravity(m).isApprox(RealVec3(0, 0, 0.5), 1e-14));
}

TEST_CASE("reflection keeps faces outward")
{
    const auto t = shapes::tetrahedron();
    Eigen::Matrix3d mirror = Eigen::Matrix3d::Identity();
    mirror(0, 0) = -1;
    const auto r = transform(t, mirror);
    const auto d = validate_mesh(r);
    CHECK(d.ok);
    CHECK(d.volume == doctest::Approx(volume(t)).epsilon(1e-14));
}

TEST_CASE("Ci detection")
{
    for (const auto& m : {shapes::cube(), shapes::octahedron(), shapes::dodecahedron(), shapes::icosahedron(),
                          shapes::cuboctahedron(), shapes::truncated_cube()}) {
        const auto s = detect_symmetry(m);
        REQUIRE(s.has_value());
        CHECK(2 * s->representatives.size() == m.faces.size());
        const Polyhedron p(m);
        CHECK(p.symmetry().has_value());
    }
    CHECK_FALSE(detect_symmetry(shapes::tetrahedron()).has_value());
    CHECK_FALSE(detect_symmetry(shapes::truncated_tetrahedron_fig()).has_value());
    // Shifted off center: no inversion center about the origin, but the
    // polyhedron is re-homed only when the origin is outside the figure.
    CHECK_FALSE(detect_symmetry(translate(shapes::cube(), RealVec3(0.1, 0, 0))).has_value());
}

TEST_CASE("polyhedron re-homes a far-off mesh")
{
    const auto m = translate(shapes::cube(), RealVec3(5, 5, 5));
    const Polyhedron p(m);
    CHECK(p.origin_shift().isApprox(RealVec3(5, 5, 5)));
    CHECK(p.volume() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.symmetry().has_value());
}
