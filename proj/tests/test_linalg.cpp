#include "formfactor/linalg.hpp"

#include <doctest.h>

using namespace ff;

TEST_CASE("bilinear and conjugated products")
{
    const ComplexVec3 u(complex(1, 2), complex(0, -1), 3.0);
    const ComplexVec3 v(complex(2, 0), complex(1, 1), complex(0, 1));
    CHECK(dot_bilinear(u, v) == complex(2, 4) + complex(0, -1) * complex(1, 1) + complex(0, 3));
    CHECK(dot_conjugated(u, v) == complex(1, -2) * 2.0 + complex(0, 1) * complex(1, 1) + complex(0, 3));
    CHECK(norm_sq(u) == doctest::Approx(5 + 1 + 9));
    const RealVec3 x = RealVec3::UnitX(), y = RealVec3::UnitY();
    CHECK(cross(x, y) == RealVec3::UnitZ());
}

TEST_CASE("safe_norm avoids underflow and overflow")
{
    const RealVec3 tiny(3e-200, 4e-200, 0);
    CHECK(safe_norm(tiny) == doctest::Approx(5e-200));
    const RealVec3 huge(3e200, 4e200, 0);
    CHECK(safe_norm(huge) == doctest::Approx(5e200));
    CHECK(safe_norm(RealVec3(RealVec3::Zero())) == 0.0);
}

TEST_CASE("sinc")
{
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-20) == 1.0);
    CHECK(sinc(M_PI / 2) == doctest::Approx(2 / M_PI).epsilon(1e-15));
    const complex z(0.3, 0.2);
    CHECK(std::abs(sinc(z) - std::sin(z) / z) < 1e-16);
}

TEST_CASE("decompose splits q relative to a plane")
{
    Plane p;
    p.normal = RealVec3(0, 0, 1);
    p.r_perp = 2;
    const ComplexVec3 q(complex(1, 0.1), 2.0, complex(3, -1));
    const auto d = decompose(q, p);
    CHECK(d.q_perp_scalar == complex(3, -1));
    CHECK(d.q_par(2) == complex(0));
    CHECK(d.q_par(0) == complex(1, 0.1));
    CHECK_FALSE(d.q_par_is_zero);
    CHECK(d.q_cross(0) == -d.q_par(1));
}

TEST_CASE("decompose snaps tiny in-plane residue to zero")
{
    Plane p;
    p.normal = RealVec3(1, 1, 1).normalized();
    const ComplexVec3 q = to_complex(RealVec3(7.3 * p.normal));
    const auto d = decompose(q, p);
    CHECK(d.q_par_is_zero);
    CHECK(d.norm_sq_q_par == 0.0);
}

TEST_CASE("all_finite")
{
    CHECK(all_finite(RealVec3(1, 2, 3)));
    CHECK_FALSE(all_finite(RealVec3(1, NAN, 3)));
    CHECK_FALSE(all_finite(ComplexVec3(complex(0, INFINITY), 0.0, 0.0)));
}
