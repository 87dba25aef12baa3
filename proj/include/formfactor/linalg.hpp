// formfactor/linalg.hpp
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace ff {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Real>
using CVec3 = Eigen::Matrix<std::complex<Real>, 3, 1>;

using complex = std::complex<double>;
using RealVec3 = Vec3<double>;
using ComplexVec3 = CVec3<double>;

inline constexpr double kMachineEpsilon = std::numeric_limits<double>::epsilon();

namespace detail {

template <typename T>
struct real_of {
    using type = T;
};
template <typename T>
struct real_of<std::complex<T>> {
    using type = T;
};

template <typename T>
inline T conj_if_complex(const T& x) { return x; }
template <typename T>
inline std::complex<T> conj_if_complex(const std::complex<T>& x) { return std::conj(x); }

} // namespace detail

template <typename Scalar>
using real_of_t = typename detail::real_of<Scalar>::type;

// Vector products follow the bilinear convention: no implicit conjugation.
// Mixed real/complex operands are allowed; the result takes the common type.

template <typename DA, typename DB>
[[nodiscard]] inline auto dot_bilinear(const Eigen::MatrixBase<DA>& u, const Eigen::MatrixBase<DB>& v)
{
    return u(0) * v(0) + u(1) * v(1) + u(2) * v(2);
}

template <typename DA, typename DB>
[[nodiscard]] inline auto dot_conjugated(const Eigen::MatrixBase<DA>& u, const Eigen::MatrixBase<DB>& v)
{
    using detail::conj_if_complex;
    return conj_if_complex(u(0)) * v(0) + conj_if_complex(u(1)) * v(1) + conj_if_complex(u(2)) * v(2);
}

template <typename DA, typename DB>
[[nodiscard]] inline auto cross(const Eigen::MatrixBase<DA>& u, const Eigen::MatrixBase<DB>& v)
{
    using S = decltype(u(0) * v(0));
    Vec3<S> w;
    w << u(1) * v(2) - u(2) * v(1),
         u(2) * v(0) - u(0) * v(2),
         u(0) * v(1) - u(1) * v(0);
    return w;
}

/// Hermitian squared norm, sum of |u_i|^2.
template <typename D>
[[nodiscard]] inline auto norm_sq(const Eigen::MatrixBase<D>& u)
{
    using std::norm;
    using R = real_of_t<typename D::Scalar>;
    R s = 0;
    for (int i = 0; i < 3; ++i) {
        if constexpr (std::is_same_v<typename D::Scalar, R>)
            s += u(i) * u(i);
        else
            s += norm(u(i));
    }
    return s;
}

/// Hermitian norm computed with scaling, so that tiny or huge vectors
/// do not underflow or overflow in the intermediate squares.
template <typename D>
[[nodiscard]] inline auto safe_norm(const Eigen::MatrixBase<D>& u)
{
    using R = real_of_t<typename D::Scalar>;
    R m = 0;
    for (int i = 0; i < 3; ++i)
        m = std::max<R>(m, std::abs(u(i)));
    if (m == 0)
        return R(0);
    R s = 0;
    for (int i = 0; i < 3; ++i) {
        const R a = std::abs(u(i)) / m;
        s += a * a;
    }
    return m * std::sqrt(s);
}

template <typename D>
[[nodiscard]] inline bool all_finite(const Eigen::MatrixBase<D>& u)
{
    for (int i = 0; i < 3; ++i) {
        if constexpr (std::is_same_v<typename D::Scalar, real_of_t<typename D::Scalar>>) {
            if (!std::isfinite(u(i)))
                return false;
        } else {
            if (!std::isfinite(u(i).real()) || !std::isfinite(u(i).imag()))
                return false;
        }
    }
    return true;
}

/// Cardinal sine, sin(z)/z with value 1 at z = 0. Evaluated literally:
/// sin has full relative accuracy near zero, so the quotient has too.
template <typename T>
[[nodiscard]] inline T sinc(const T& z)
{
    using std::sin;
    if (z == T(0))
        return T(1);
    return sin(z) / z;
}

/// Oriented plane {r : r.normal = r_perp}.
struct Plane {
    RealVec3 normal = RealVec3::UnitZ();
    double r_perp = 0;

    [[nodiscard]] bool valid() const { return std::abs(normal.norm() - 1.0) <= 1e-14 && all_finite(normal) && std::isfinite(r_perp); }
};

/// Split of a wavevector relative to a plane normal.
struct WavevectorDecomposition {
    ComplexVec3 q;
    ComplexVec3 q_perp;
    ComplexVec3 q_par;
    ComplexVec3 q_cross;       // normal x q_par
    complex q_perp_scalar;     // q . normal
    double norm_sq_q = 0;
    double norm_sq_q_par = 0;
    bool q_par_is_zero = false;
};

/// Decompose q into components perpendicular and parallel to the plane.
/// One re-projection pass removes the spurious out-of-plane residue of
/// q_par; if |q_par|/|q_perp| falls below machine epsilon, q_par is set
/// to exactly zero.
[[nodiscard]] inline WavevectorDecomposition decompose(const ComplexVec3& q, const Plane& plane)
{
    const RealVec3& n = plane.normal;
    WavevectorDecomposition d;
    d.q = q;
    d.q_perp_scalar = dot_bilinear(q, n);
    d.q_perp = d.q_perp_scalar * n.cast<complex>();
    d.q_par = q - d.q_perp;
    d.q_par -= dot_bilinear(d.q_par, n) * n.cast<complex>();

    const double par = safe_norm(d.q_par);
    const double perp = safe_norm(d.q_perp);
    if (par < kMachineEpsilon * perp)
        d.q_par.setZero();

    d.q_par_is_zero = d.q_par.isZero(0.0);
    d.q_cross = cross(n, d.q_par);
    d.norm_sq_q = norm_sq(q);
    d.norm_sq_q_par = d.q_par_is_zero ? 0.0 : norm_sq(d.q_par);
    return d;
}

template <typename Scalar>
[[nodiscard]] inline ComplexVec3 to_complex(const Vec3<Scalar>& v)
{
    return v.template cast<complex>();
}

} // namespace ff
