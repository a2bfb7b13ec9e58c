#pragma once

#include <vector>

// Fixed-step RK4 for the pair of linear wave equations
//   alpha1'' = (v''/v) alpha1 + 2 v kappa' + 4 v' kappa
//   alpha2'' = (v''/v) alpha2
// written once over the scalar type, so the same scheme can be run in
// extended precision when its truncation error drops below double round-off.

namespace vring {

template <class Real>
struct BasicWaveCoefficients {
    Real v = 1;
    Real v_t = 0;
    Real v_tt = 0;
    Real kappa = 0;
    Real kappa_t = 0;
};

/// ODE state y = (alpha1, alpha1', alpha2, alpha2') at time t.
template <class Real>
struct BasicWaveState {
    Real t = 0;
    Real alpha1 = 0;
    Real alpha1_t = 0;
    Real alpha2 = 0;
    Real alpha2_t = 0;
};

namespace detail {

template <class Real>
struct WaveSlope {
    Real alpha1;
    Real alpha1_t;
    Real alpha2;
    Real alpha2_t;
};

template <class Real>
WaveSlope<Real> wave_rhs(const BasicWaveCoefficients<Real>& w, const BasicWaveState<Real>& y)
{
    const Real q = w.v_tt / w.v;
    const Real forcing = 2 * w.v * w.kappa_t + 4 * w.v_t * w.kappa;
    return {y.alpha1_t, q * y.alpha1 + forcing, y.alpha2_t, q * y.alpha2};
}

template <class Real>
BasicWaveState<Real> advance(const BasicWaveState<Real>& y, const WaveSlope<Real>& k, Real h)
{
    return {y.t, y.alpha1 + h * k.alpha1, y.alpha1_t + h * k.alpha1_t, y.alpha2 + h * k.alpha2,
            y.alpha2_t + h * k.alpha2_t};
}

} // namespace detail

/// Classical RK4 with n_steps fixed steps from init.t to t_end. The source
/// is called once at the start and then at the midpoint and end of every
/// step. Returns the n_steps + 1 node states, the first being init.
template <class Real, class Source>
std::vector<BasicWaveState<Real>> integrate_wave_rk4(const Source& source,
                                                     const BasicWaveState<Real>& init, Real t_end,
                                                     int n_steps)
{
    std::vector<BasicWaveState<Real>> nodes;
    nodes.reserve(static_cast<std::size_t>(n_steps) + 1);
    nodes.push_back(init);

    const Real h = (t_end - init.t) / n_steps;
    const Real half = h / 2;
    BasicWaveState<Real> y = init;
    BasicWaveCoefficients<Real> w_start = source(y.t);
    for (int i = 0; i < n_steps; ++i) {
        const Real t = init.t + h * i;
        const BasicWaveCoefficients<Real> w_mid = source(t + half);
        const BasicWaveCoefficients<Real> w_end = source(t + h);

        const auto k1 = detail::wave_rhs(w_start, y);
        const auto k2 = detail::wave_rhs(w_mid, detail::advance(y, k1, half));
        const auto k3 = detail::wave_rhs(w_mid, detail::advance(y, k2, half));
        const auto k4 = detail::wave_rhs(w_end, detail::advance(y, k3, h));

        const Real sixth = h / 6;
        y.alpha1 += sixth * (k1.alpha1 + 2 * k2.alpha1 + 2 * k3.alpha1 + k4.alpha1);
        y.alpha1_t += sixth * (k1.alpha1_t + 2 * k2.alpha1_t + 2 * k3.alpha1_t + k4.alpha1_t);
        y.alpha2 += sixth * (k1.alpha2 + 2 * k2.alpha2 + 2 * k3.alpha2 + k4.alpha2);
        y.alpha2_t += sixth * (k1.alpha2_t + 2 * k2.alpha2_t + 2 * k3.alpha2_t + k4.alpha2_t);
        y.t = (i + 1 == n_steps) ? t_end : init.t + h * (i + 1);

        nodes.push_back(y);
        w_start = w_end;
    }
    return nodes;
}

} // namespace vring
