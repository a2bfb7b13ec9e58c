#pragma once

#include <vector>

#include "vring/ring_model.hpp"
#include "vring/wave_dynamics.hpp"

namespace vring {

/// Mean absolute directional correlation of an axis field with diagnostics.
/// per_s_mean holds NaN on infeasible columns.
struct MadcReport {
    double madc = 0.0;
    double feasible_fraction = 0.0;
    std::vector<double> per_time_mean;
    std::vector<double> per_s_mean;
};

/// Trapezoid rule in t over the n_time + 1 nodes, uniform mean over the
/// feasible s-columns. Throws DimensionMismatch if field and cfg disagree.
MadcReport madc(const AxisField& field, const RingConfig& cfg);

/// Optimizer ranking score: madc weighted by the feasible fraction.
inline double ranking_score(const MadcReport& report)
{
    return report.madc * report.feasible_fraction;
}

} // namespace vring
