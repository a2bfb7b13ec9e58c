#pragma once

#include "vring/vec3.hpp"

namespace vring {

inline constexpr double kDefaultEpsV = 1e-10;
inline constexpr double kDefaultEpsKappa = 1e-12;

/// Orthonormal right-handed moving frame (tangent, normal, binormal).
struct FrenetFrame {
    Vec3 tau;
    Vec3 n;
    Vec3 b;
};

/// Kinematics of a time trajectory t -> Phi(t, s) at one instant.
///
/// v is the speed |d1|, v_t and v_tt its time derivatives. kappa is the
/// curvature with respect to arc length and kappa_t its time derivative
/// (filled by the caller; frame_from_derivatives leaves it at zero).
/// When degenerate is set the curvature fell below the frame threshold,
/// torsion is zero and the normal comes from the fixed fallback rule.
struct TrajectoryKinematics {
    double v = 0.0;
    double v_t = 0.0;
    double v_tt = 0.0;
    double kappa = 0.0;
    double kappa_t = 0.0;
    double torsion = 0.0;
    FrenetFrame frame;
    bool degenerate = false;
};

/// Frame, speed derivatives, curvature and torsion from the first three
/// time derivatives of a curve. Throws ZeroSpeed if |d1| <= eps_v.
///
/// Degenerate fallback (kappa < eps_kappa): n = normalize(z_hat x tau), or
/// normalize(x_hat x tau) when tau is nearly parallel to z_hat.
TrajectoryKinematics frame_from_derivatives(const Vec3& d1, const Vec3& d2, const Vec3& d3,
                                            double eps_kappa = kDefaultEpsKappa,
                                            double eps_v = kDefaultEpsV);

/// Curvature |d1 x d2| / |d1|^3 alone (no frame).
double curvature_from_derivatives(const Vec3& d1, const Vec3& d2);

/// dt/dz = 1/v: converts an arc-length derivative into a time derivative.
inline double arc_reparam_factor(const TrajectoryKinematics& kin) { return 1.0 / kin.v; }

} // namespace vring
