#include "vring/wave_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "vring/errors.hpp"

namespace vring {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<AlphaPair> alignment_at(const RingColumn& column, double t, double eps_align)
{
    const TrajectoryKinematics kin = column.frame_at(t);
    return solve_initial_alignment(kin.frame, column.point(t).ds, eps_align);
}

// Result of one s-column; throws ZeroSpeed through.
struct ColumnResult {
    bool feasible = false;
    std::vector<WaveState> states;
};

ColumnResult solve_column(const RingColumn& column, const RingConfig& cfg)
{
    ColumnResult out;
    const auto alpha0 = alignment_at(column, cfg.t0, cfg.eps_align);
    if (!alpha0) return out;
    const auto rates = initial_alpha_rates(column, cfg.t0, cfg);
    if (!rates) return out;

    const WaveState init{cfg.t0, alpha0->alpha1, rates->alpha1, alpha0->alpha2, rates->alpha2};
    out.states = integrate_wave(
        [&column](double t) { return wave_coefficients(column.kinematics(t)); }, init, cfg.t1,
        cfg.n_time);
    out.feasible = true;
    return out;
}

} // namespace

std::optional<AlphaPair> solve_initial_alignment(const FrenetFrame& frame, const Vec3& zeta_star,
                                                 double eps_align)
{
    const Vec3 unit = normalized(zeta_star);
    const double a = dot(unit, frame.tau);
    if (!(a > eps_align)) return std::nullopt;
    return AlphaPair{-dot(unit, frame.n) / a, -dot(unit, frame.b) / a};
}

std::optional<AlphaPair> initial_alpha_rates(const RingColumn& column, double t0,
                                             const RingConfig& cfg)
{
    const double h = cfg.fd_step();
    const auto before = alignment_at(column, t0 - h, cfg.eps_align);
    const auto after = alignment_at(column, t0 + h, cfg.eps_align);
    if (!before || !after) return std::nullopt;
    return AlphaPair{(after->alpha1 - before->alpha1) / (2.0 * h),
                     (after->alpha2 - before->alpha2) / (2.0 * h)};
}

std::optional<AlphaPair> initial_alpha_rates(double t0, double s, const CoefficientTensor& c,
                                             const RingConfig& cfg)
{
    return initial_alpha_rates(RingColumn(c, cfg, s), t0, cfg);
}

std::vector<WaveState> integrate_wave(const WaveCoefficientSource& source, const WaveState& init,
                                      double t_end, int n_steps)
{
    return integrate_wave_rk4(source, init, t_end, n_steps);
}

std::vector<AlphaState> integrate_alpha(const CoefficientTensor& c, const RingConfig& cfg,
                                        const AlphaState& init)
{
    const auto n_s = static_cast<std::size_t>(cfg.n_s);
    if (init.alpha1.size() != n_s || init.alpha2.size() != n_s || init.alpha1_t.size() != n_s ||
        init.alpha2_t.size() != n_s) {
        throw DimensionMismatch("alpha state length does not match n_s");
    }

    std::vector<AlphaState> series(static_cast<std::size_t>(cfg.n_time) + 1);
    for (int i = 0; i <= cfg.n_time; ++i) {
        auto& st = series[i];
        st.t = cfg.time_node(i);
        st.alpha1.resize(n_s);
        st.alpha2.resize(n_s);
        st.alpha1_t.resize(n_s);
        st.alpha2_t.resize(n_s);
    }
    for (std::size_t k = 0; k < n_s; ++k) {
        const RingColumn column(c, cfg, cfg.s_node(static_cast<int>(k)));
        const WaveState y0{init.t, init.alpha1[k], init.alpha1_t[k], init.alpha2[k], init.alpha2_t[k]};
        const auto nodes = integrate_wave(
            [&column](double t) { return wave_coefficients(column.kinematics(t)); }, y0, cfg.t1,
            cfg.n_time);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            series[i].alpha1[k] = nodes[i].alpha1;
            series[i].alpha1_t[k] = nodes[i].alpha1_t;
            series[i].alpha2[k] = nodes[i].alpha2;
            series[i].alpha2_t[k] = nodes[i].alpha2_t;
        }
    }
    return series;
}

std::size_t AxisField::feasible_count() const
{
    return static_cast<std::size_t>(std::count(feasible.begin(), feasible.end(), true));
}

AxisField axis_field(const CoefficientTensor& c, const RingConfig& cfg, int workers)
{
    cfg.validate();
    if (c.J() != cfg.J || c.K() != cfg.K) {
        throw DimensionMismatch("coefficient tensor shape does not match ring config");
    }

    AxisField field;
    field.n_time = cfg.n_time;
    field.n_s = cfg.n_s;
    const std::size_t n_nodes = static_cast<std::size_t>(cfg.n_time + 1) * cfg.n_s;
    field.times.resize(cfg.n_time + 1);
    for (int i = 0; i <= cfg.n_time; ++i) field.times[i] = cfg.time_node(i);
    field.s_values.resize(cfg.n_s);
    for (int k = 0; k < cfg.n_s; ++k) field.s_values[k] = cfg.s_node(k);
    field.position.resize(n_nodes);
    field.zeta_star_hat.resize(n_nodes);
    field.zeta_hat.assign(n_nodes, Vec3{kNaN, kNaN, kNaN});
    field.corr.assign(n_nodes, kNaN);
    field.feasible.assign(cfg.n_s, false);

    std::vector<char> feasible(cfg.n_s, 0);
    std::vector<char> stationary(cfg.n_s, 0);

    auto run_column = [&](int k) {
        const RingColumn column(c, cfg, field.s_values[k]);
        for (int i = 0; i <= cfg.n_time; ++i) {
            const RingPoint p = column.point(field.times[i]);
            field.position[field.at(i, k)] = p.position;
            field.zeta_star_hat[field.at(i, k)] = normalized(p.ds);
        }
        try {
            const ColumnResult res = solve_column(column, cfg);
            if (!res.feasible) return;
            for (int i = 0; i <= cfg.n_time; ++i) {
                const WaveState& y = res.states[i];
                const FrenetFrame fr = column.frame_at(field.times[i]).frame;
                const Vec3 zeta = fr.tau - y.alpha1 * fr.n - y.alpha2 * fr.b;
                if (!is_finite(zeta)) return;
                const std::size_t idx = field.at(i, k);
                field.zeta_hat[idx] = normalized(zeta);
                field.corr[idx] = std::clamp(dot(field.zeta_star_hat[idx], field.zeta_hat[idx]), -1.0, 1.0);
            }
            feasible[k] = 1;
        } catch (const ZeroSpeed&) {
            stationary[k] = 1;
        }
    };

    const int n_workers = std::clamp(workers, 1, cfg.n_s);
    if (n_workers == 1) {
        for (int k = 0; k < cfg.n_s; ++k) run_column(k);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&, w] {
                for (int k = w; k < cfg.n_s; k += n_workers) run_column(k);
            });
        }
    }

    if (std::find(stationary.begin(), stationary.end(), 1) != stationary.end()) {
        field.trial_infeasible = true;
        field.note = "stationary trajectory point (zero speed) in the deformed ring";
        std::fill(field.zeta_hat.begin(), field.zeta_hat.end(), Vec3{kNaN, kNaN, kNaN});
        std::fill(field.corr.begin(), field.corr.end(), kNaN);
        return field;
    }

    for (int k = 0; k < cfg.n_s; ++k) {
        field.feasible[k] = feasible[k] != 0;
        if (!field.feasible[k]) {
            for (int i = 0; i <= cfg.n_time; ++i) {
                field.zeta_hat[field.at(i, k)] = Vec3{kNaN, kNaN, kNaN};
                field.corr[field.at(i, k)] = kNaN;
            }
        }
    }
    if (field.feasible_count() == 0) {
        field.note = "no column admits initial alignment: zeta_star . tau <= eps_align everywhere";
    }
    return field;
}

} // namespace vring
