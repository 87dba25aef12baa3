#include "formfactor/harness.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <numbers>

using namespace ff;
using namespace ff::harness;

TEST_CASE("delta metric")
{
    CHECK(delta({1.0, complex(2, 1)}, {1.0, complex(2, 1)}).delta == 0.0);
    CHECK(delta({1.0}, {1.0 + 1e-10}).delta == doctest::Approx(1e-10).epsilon(1e-5));
    const auto r = delta({1.0, 2.0}, {-1.0, 2.0});
    CHECK(r.excluded == 1);
    CHECK(r.samples == 1);
    CHECK_THROWS_AS((void)delta({1.0}, {-1.0}), Error);
    CHECK_THROWS_AS((void)delta({1.0}, {}), Error);

    const std::vector<complex> a{1.0, complex(0.3, 0.1), complex(-2, 5)};
    const std::vector<complex> b{1.0 + 1e-9, complex(0.3, 0.1 + 1e-12), complex(-2.001, 5)};
    CHECK(delta(a, b).delta == delta(b, a).delta);
}

TEST_CASE("default q set")
{
    const auto qs = default_q_set(1.0);
    CHECK(qs.size() == 61 * 7 * 2);
    CHECK(default_directions().size() == 7);
    CHECK(safe_norm(qs.front()) == doctest::Approx(1e-6));
}

TEST_CASE("symmetry suite")
{
    const auto cube = shapes::cube();
    const auto qs = default_q_set(std::sqrt(0.75));
    const Eigen::Matrix3d r90 = Eigen::AngleAxisd(std::numbers::pi / 2, RealVec3::UnitZ()).toRotationMatrix();
    CHECK(symmetry_suite(cube, r90, qs).delta <= 5e-10);

    const auto ico = shapes::icosahedron();
    const Eigen::Matrix3d r5 =
        Eigen::AngleAxisd(2 * std::numbers::pi / 5, ico.vertices.front().normalized()).toRotationMatrix();
    CHECK(symmetry_suite(ico, r5, qs).delta <= 5e-10);

    const Eigen::Matrix3d r45 = Eigen::AngleAxisd(std::numbers::pi / 4, RealVec3::UnitZ()).toRotationMatrix();
    try {
        (void)symmetry_suite(cube, r45, qs);
        FAIL("expected NotASymmetry");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotASymmetry);
    }

    const auto hex = shapes::regular_polygon(6, 1.0);
    const Eigen::Matrix3d r60 = Eigen::AngleAxisd(std::numbers::pi / 3, RealVec3::UnitZ()).toRotationMatrix();
    CHECK(symmetry_suite(hex, r60, default_q_set(1.0)).delta <= 5e-10);
}

TEST_CASE("symmetry ops are symmetries of their shapes")
{
    for (const auto& spec : shapes::default_suite()) {
        const auto mesh = std::get<PolyhedronMesh>(shapes::make(spec));
        const auto ops = symmetry_ops(spec, mesh);
        CHECK_FALSE(ops.empty());
        const auto qs = q_set(1.0, {RealVec3(1, 2, 3).normalized()}, 5, 1e-3, 10);
        for (const auto& op : ops)
            CHECK_NOTHROW((void)symmetry_suite(mesh, op.matrix, qs));
    }
}

TEST_CASE("specialization suite")
{
    for (const auto& c : run_specialization_suite())
        CHECK_MESSAGE(c.report.delta <= 3e-10, c.name);
}

TEST_CASE("continuity scan on the cube finds the series switch")
{
    const Polyhedron cube(shapes::cube());
    EvalConfig cfg;
    cfg.use_symmetry = false;
    const auto eval = traced(cube, cfg);
    const ComplexVec3 dir = to_complex(RealVec3(RealVec3(1, 2, 3).normalized()));
    const auto sw = continuity_scan(eval, dir, 1e-4, 10, 60);
    bool found = false;
    for (const auto& s : sw) {
        CHECK(s.delta_cont <= 1e-9);
        if (s.below.method == Method::SeriesFullQ && s.above.method == Method::Analytic) {
            found = true;
            CHECK(s.q * cube.radius() == doctest::Approx(cfg.threshold_polyhedron).epsilon(1e-12));
        }
    }
    CHECK(found);
}

TEST_CASE("continuity scan on a triangle finds the in-plane switch")
{
    const Polygon tri(translate(shapes::triangle_edge_along_x(), RealVec3(0, 0, 0.5)));
    EvalConfig cfg;
    const auto eval = traced(tri, cfg);
    // Mostly perpendicular: the in-plane threshold is crossed at |q| >> c/a.
    const RealVec3 d = RealVec3(0.01, 0, 1).normalized();
    const auto sw = continuity_scan(eval, to_complex(d), 1.0, 1e3, 80);
    bool found = false;
    for (const auto& s : sw) {
        CHECK(s.delta_cont <= 1e-9);
        if (s.below.method == Method::SeriesInPlane && s.above.method == Method::Analytic) {
            found = true;
            CHECK(s.q * d.x() * tri.radius() == doctest::Approx(cfg.threshold_q_par).epsilon(1e-12));
        }
    }
    CHECK(found);
}

TEST_CASE("single-method range has no switches")
{
    const Polyhedron cube(shapes::cube());
    const auto sw = continuity_scan(traced(cube, {}), ComplexVec3(1, 0, 0), 2, 20, 30);
    CHECK(sw.empty());
}

TEST_CASE("tuning")
{
    const std::vector<shapes::ShapeSpec> small{{shapes::ShapeKind::cuboctahedron, {}},
                                              {shapes::ShapeKind::truncated_tetrahedron_fig, {}}};
    EvalConfig one;
    one.threshold_q = 0.03;
    one.threshold_q_par = 0.02;
    one.threshold_polyhedron = 0.05;
    const auto t = tune_thresholds(small, {one}, 20);
    CHECK(t.config.threshold_q == 0.03);
    CHECK(t.config.threshold_polyhedron == 0.05);
    CHECK(t.worst_delta_cont <= 1e-9);

    const auto grid = threshold_grid({1e-3, 1e-1});
    CHECK(grid.size() == 8);
    const auto best = tune_thresholds(small, grid, 20);
    CHECK(best.worst_delta_cont <= 1e-9);

    // max_order too small for these thresholds: every configuration fails.
    EvalConfig tight = one;
    tight.threshold_q = tight.threshold_q_par = tight.threshold_polyhedron = 0.9;
    tight.max_order = 4;
    const auto none = tune_thresholds(small, {tight}, 20);
    CHECK(std::isinf(none.worst_delta_cont));
}

TEST_CASE("report is JSON with per-suite worst values")
{
    const auto spec = run_specialization_suite();
    const auto text = report_json({}, spec, nullptr);
    CHECK(text.find("\"specialization\"") != std::string::npos);
    CHECK(text.find("\"worst\"") != std::string::npos);
}
