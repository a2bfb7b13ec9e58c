#include "vring/objective_madc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vring/errors.hpp"

namespace vring {

MadcReport madc(const AxisField& field, const RingConfig& cfg)
{
    const std::size_t n_nodes = static_cast<std::size_t>(cfg.n_time + 1) * cfg.n_s;
    if (field.n_time != cfg.n_time || field.n_s != cfg.n_s || field.corr.size() != n_nodes ||
        field.feasible.size() != static_cast<std::size_t>(cfg.n_s)) {
        std::ostringstream msg;
        msg << "axis field " << field.n_time << "x" << field.n_s << " does not match config "
            << cfg.n_time << "x" << cfg.n_s;
        throw DimensionMismatch(msg.str());
    }

    MadcReport report;
    report.per_time_mean.assign(cfg.n_time + 1, 0.0);
    report.per_s_mean.assign(cfg.n_s, std::numeric_limits<double>::quiet_NaN());

    const std::size_t n_feasible = field.feasible_count();
    report.feasible_fraction = static_cast<double>(n_feasible) / cfg.n_s;
    if (n_feasible == 0) return report;

    // Trapezoid weights normalized to sum to one over [t0, t1].
    std::vector<double> w(cfg.n_time + 1, 1.0 / cfg.n_time);
    w.front() *= 0.5;
    w.back() *= 0.5;

    for (int k = 0; k < cfg.n_s; ++k) {
        if (!field.feasible[k]) continue;
        double acc = 0.0;
        for (int i = 0; i <= cfg.n_time; ++i) acc += w[i] * std::abs(field.corr[field.at(i, k)]);
        report.per_s_mean[k] = acc;
    }

    double total = 0.0;
    for (int i = 0; i <= cfg.n_time; ++i) {
        double row = 0.0;
        for (int k = 0; k < cfg.n_s; ++k) {
            if (field.feasible[k]) row += std::abs(field.corr[field.at(i, k)]);
        }
        report.per_time_mean[i] = row / static_cast<double>(n_feasible);
        total += w[i] * report.per_time_mean[i];
    }
    report.madc = std::clamp(total, 0.0, 1.0);
    return report;
}

} // namespace vring
