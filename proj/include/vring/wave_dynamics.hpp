#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vring/geometry.hpp"
#include "vring/ring_model.hpp"
#include "vring/vec3.hpp"
#include "vring/wave_rk4.hpp"

namespace vring {

/// Swirl-axis coefficients (or their rates) at one angular point.
struct AlphaPair {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

/// alpha_1, alpha_2 such that zeta = tau - alpha1 n - alpha2 b is a positive
/// multiple of zeta_star. Requires a = zeta_star_hat . tau > eps_align;
/// returns nullopt otherwise (no parallel, same-orientation solution).
std::optional<AlphaPair> solve_initial_alignment(const FrenetFrame& frame, const Vec3& zeta_star,
                                                 double eps_align);

/// Central difference over cfg.fd_step() of the algebraic alignment solution
/// at (t0 +- h, s). nullopt if either stencil point is infeasible.
std::optional<AlphaPair> initial_alpha_rates(double t0, double s, const CoefficientTensor& c,
                                             const RingConfig& cfg);

/// Same as above for a prebuilt column.
std::optional<AlphaPair> initial_alpha_rates(const RingColumn& column, double t0,
                                             const RingConfig& cfg);

using WaveCoefficients = BasicWaveCoefficients<double>;
using WaveState = BasicWaveState<double>;

/// Wave-equation inputs read off the trajectory kinematics.
inline WaveCoefficients wave_coefficients(const TrajectoryKinematics& kin)
{
    return {kin.v, kin.v_t, kin.v_tt, kin.kappa, kin.kappa_t};
}

using WaveCoefficientSource = std::function<WaveCoefficients(double t)>;

/// Double-precision integrate_wave_rk4.
std::vector<WaveState> integrate_wave(const WaveCoefficientSource& source, const WaveState& init,
                                      double t_end, int n_steps);

/// Wave-equation state over the whole s-grid at one time.
struct AlphaState {
    double t = 0.0;
    std::vector<double> alpha1;
    std::vector<double> alpha2;
    std::vector<double> alpha1_t;
    std::vector<double> alpha2_t;
};

/// Integrates every column of the s-grid from init (at cfg.t0) to cfg.t1 in
/// cfg.n_time steps. Throws ZeroSpeed if any evaluation point is stationary.
std::vector<AlphaState> integrate_alpha(const CoefficientTensor& c, const RingConfig& cfg,
                                        const AlphaState& init);

/// Unit vortex axis, unit swirl axis and their correlation on the
/// (n_time + 1) x n_s grid, stored time-major: index = i * n_s + k.
///
/// Infeasible columns hold NaN in zeta_hat and corr. trial_infeasible marks a
/// field where a stationary point was hit; then every column is infeasible.
struct AxisField {
    int n_time = 0;
    int n_s = 0;
    std::vector<double> times;
    std::vector<double> s_values;
    std::vector<Vec3> position;
    std::vector<Vec3> zeta_star_hat;
    std::vector<Vec3> zeta_hat;
    std::vector<double> corr;
    std::vector<bool> feasible;
    bool trial_infeasible = false;
    std::string note;

    std::size_t at(int i, int k) const { return static_cast<std::size_t>(i) * n_s + k; }
    std::size_t feasible_count() const;
};

/// Builds the axis field. Per-column infeasibility is recorded, never thrown.
/// workers > 1 fans columns out over threads; the result is identical to the
/// serial one.
AxisField axis_field(const CoefficientTensor& c, const RingConfig& cfg, int workers = 1);

} // namespace vring
