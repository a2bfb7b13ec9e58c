#include "vring/geometry.hpp"

#include <cmath>
#include <sstream>

#include "vring/errors.hpp"

namespace vring {

namespace {

Vec3 fallback_normal(const Vec3& tau)
{
    const Vec3 z_hat{0.0, 0.0, 1.0};
    Vec3 n = cross(z_hat, tau);
    if (norm(n) < 1e-8) {
        n = cross(Vec3{1.0, 0.0, 0.0}, tau);
    }
    n = normalized(n);
    // Remove any residual tangent component left by rounding in tau.
    n = normalized(n - dot(n, tau) * tau);
    return n;
}

} // namespace

double curvature_from_derivatives(const Vec3& d1, const Vec3& d2)
{
    const double v = norm(d1);
    return norm(cross(d1, d2)) / (v * v * v);
}

TrajectoryKinematics frame_from_derivatives(const Vec3& d1, const Vec3& d2, const Vec3& d3,
                                            double eps_kappa, double eps_v)
{
    const double v = norm(d1);
    if (!(v > eps_v)) {
        std::ostringstream msg;
        msg << "stationary trajectory point: |dPhi/dt| = " << v << " <= " << eps_v;
        throw ZeroSpeed(msg.str());
    }

    TrajectoryKinematics kin;
    kin.v = v;
    kin.v_t = dot(d1, d2) / v;
    kin.v_tt = (dot(d2, d2) + dot(d1, d3) - kin.v_t * kin.v_t) / v;

    const Vec3 d1xd2 = cross(d1, d2);
    const double cross_norm = norm(d1xd2);
    kin.kappa = cross_norm / (v * v * v);

    const Vec3 tau = d1 / v;
    if (kin.kappa < eps_kappa) {
        kin.degenerate = true;
        kin.torsion = 0.0;
        const Vec3 n = fallback_normal(tau);
        kin.frame = {tau, n, cross(tau, n)};
        return kin;
    }

    kin.torsion = dot(d1xd2, d3) / (cross_norm * cross_norm);
    const Vec3 b = d1xd2 / cross_norm;
    kin.frame = {tau, cross(b, tau), b};
    return kin;
}

} // namespace vring
