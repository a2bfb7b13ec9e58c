#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "vring/geometry.hpp"
#include "vring/vec3.hpp"

namespace vring {

/// How s enters the elliptic radius profile: theta = 2*pi*s (turns) or theta = s.
enum class AngleConvention { turns, radians };

/// Model and discretization parameters of the ring experiment.
struct RingConfig {
    double delta = 0.02;
    int J = 20;
    int K = 10;
    double t0 = 1.0 / 48.0;
    double t1 = 1.0 / 24.0;
    int n_time = 32;
    int n_s = 128;
    double c_max = 30.0;
    AngleConvention angle_convention = AngleConvention::turns;
    double eps_v = kDefaultEpsV;
    double eps_kappa = kDefaultEpsKappa;
    double eps_align = 1e-6;
    double fd_step_factor = 1.0 / 1024.0;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;

    /// Step used for the time finite differences (kappa_t, initial rates).
    double fd_step() const { return fd_step_factor * (t1 - t0); }
    double time_node(int i) const { return t0 + (t1 - t0) * i / n_time; }
    double s_node(int k) const { return static_cast<double>(k) / n_s; }
};

/// Deformation coefficients c^{lm}_{jk}: l = 1, 2 selects gamma_1 / gamma_2,
/// m = 1, 2 selects the sine / cosine series, j in [0, J], k in [0, K].
/// Flat storage is row-major in (l, m, j, k).
class CoefficientTensor {
public:
    CoefficientTensor(int J, int K);
    CoefficientTensor(int J, int K, std::vector<double> flat);

    static CoefficientTensor zeros(const RingConfig& cfg) { return {cfg.J, cfg.K}; }

    int J() const { return J_; }
    int K() const { return K_; }
    std::size_t size() const { return data_.size(); }

    double& at(int l, int m, int j, int k) { return data_[index(l, m, j, k)]; }
    double at(int l, int m, int j, int k) const { return data_[index(l, m, j, k)]; }

    std::span<const double> flat() const { return data_; }
    std::span<double> flat() { return data_; }

    double max_abs() const;

    friend bool operator==(const CoefficientTensor&, const CoefficientTensor&) = default;

private:
    std::size_t index(int l, int m, int j, int k) const;

    int J_;
    int K_;
    std::vector<double> data_;
};

/// Throws ConfigError when the shape does not match cfg or a coefficient
/// exceeds cfg.c_max in magnitude.
void check_coefficients(const CoefficientTensor& c, const RingConfig& cfg);

struct TransportJet {
    double value;
    double d1;
    double d2;
    double d3;
};

/// Gamma(t) = 1 - cos(12 pi t) and its first three derivatives.
TransportJet transport_gamma(double t);

/// Elliptic initial radius R(s, delta).
double radius_profile(double s, double delta, AngleConvention convention = AngleConvention::turns);

/// dR/ds, with the chain-rule factor of the chosen convention.
double radius_profile_ds(double s, double delta, AngleConvention convention = AngleConvention::turns);

/// A deformation component with its time derivatives up to third order and
/// its s-derivative.
struct DeformationJet {
    double value = 0.0;
    double dt = 0.0;
    double dtt = 0.0;
    double dttt = 0.0;
    double ds = 0.0;
};

/// gamma_1 (index 0) and gamma_2 (index 1) at (t, s).
std::array<DeformationJet, 2> deformation_eval(double t, double s, const CoefficientTensor& c,
                                               const RingConfig& cfg);

/// Position of the ring point with its time derivatives d1..d3 and ds = dPhi/ds.
struct RingPoint {
    Vec3 position;
    Vec3 d1;
    Vec3 d2;
    Vec3 d3;
    Vec3 ds;
};

/// The ring restricted to one angular parameter s.
///
/// Folds the Fourier sums into per-power polynomial coefficients once so that
/// evaluation at any t costs O(J). Holds no reference to the tensor.
class RingColumn {
public:
    RingColumn(const CoefficientTensor& c, const RingConfig& cfg, double s);

    double s() const { return s_; }

    std::array<DeformationJet, 2> deformation(double t) const;
    RingPoint point(double t) const;

    /// Frame and speed derivatives at t; kappa_t left at zero.
    TrajectoryKinematics frame_at(double t) const;

    /// frame_at plus kappa_t by a central difference of the curvature.
    TrajectoryKinematics kinematics(double t) const;

private:
    double curvature(double t) const;

    double s_;
    double t0_;
    double radius_;
    double radius_ds_;
    Vec3 e_r_;
    Vec3 e_theta_;
    double eps_v_;
    double eps_kappa_;
    double fd_step_;
    // Coefficients of tau^{j+1}, tau = t - t0, for gamma_l and d gamma_l / ds.
    std::array<std::vector<double>, 2> series_;
    std::array<std::vector<double>, 2> series_ds_;
};

RingPoint phi_eval(double t, double s, const CoefficientTensor& c, const RingConfig& cfg);

/// Throws ZeroSpeed when |dPhi/dt| <= cfg.eps_v at (t, s).
TrajectoryKinematics kinematics_at(double t, double s, const CoefficientTensor& c,
                                   const RingConfig& cfg);

} // namespace vring
