#pragma once

// Independent reference computations for the test suites: finite
// differences, Richardson extrapolation and discrete (three-point)
// curvature. None of these call into the library's derivative code.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "vring/ring_model.hpp"
#include "vring/vec3.hpp"
#include "vring/wave_dynamics.hpp"

namespace oracle {

using vring::Vec3;
using Curve = std::function<Vec3(double)>;
using Scalar = std::function<double(double)>;

inline double central_diff(const Scalar& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline Vec3 central_diff(const Curve& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Two levels of Richardson extrapolation on the central difference, O(h^6).
inline double richardson_diff(const Scalar& f, double x, double h)
{
    const double d1 = central_diff(f, x, h);
    const double d2 = central_diff(f, x, h / 2);
    const double d4 = central_diff(f, x, h / 4);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d4 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

inline Vec3 richardson_diff(const Curve& f, double x, double h)
{
    return {richardson_diff([&](double u) { return f(u).x; }, x, h),
            richardson_diff([&](double u) { return f(u).y; }, x, h),
            richardson_diff([&](double u) { return f(u).z; }, x, h)};
}

/// Curvature of the circle through three samples (Menger curvature).
inline double menger_curvature(const Vec3& a, const Vec3& b, const Vec3& c)
{
    const double area2 = vring::norm(vring::cross(b - a, c - b));
    return 2.0 * area2 / (vring::norm(b - a) * vring::norm(c - b) * vring::norm(c - a));
}

/// Curvature of a sampled curve at u: Menger curvature of (u-h, u, u+h),
/// extrapolated in h.
inline double sampled_curvature(const Curve& f, double u, double h)
{
    auto at = [&](double step) { return menger_curvature(f(u - step), f(u), f(u + step)); };
    const double k1 = at(h);
    const double k2 = at(h / 2);
    const double k4 = at(h / 4);
    const double r1 = (4.0 * k2 - k1) / 3.0;
    const double r2 = (4.0 * k4 - k2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

/// Unit binormal of the osculating plane through three samples, extrapolated in h.
inline Vec3 sampled_binormal(const Curve& f, double u, double h)
{
    auto at = [&](double step) {
        return vring::normalized(vring::cross(f(u) - f(u - step), f(u + step) - f(u)));
    };
    const Vec3 b1 = at(h);
    const Vec3 b2 = at(h / 2);
    const Vec3 b4 = at(h / 4);
    const Vec3 r1 = (4.0 * b2 - b1) / 3.0;
    const Vec3 r2 = (4.0 * b4 - b2) / 3.0;
    return vring::normalized((16.0 * r2 - r1) / 15.0);
}

/// Torsion of a sampled curve: T = -(db/dz) . n with n = b x tau, all from
/// samples of the curve only.
inline double sampled_torsion(const Curve& f, double u, double h)
{
    const double speed = vring::norm(richardson_diff(f, u, h));
    const Vec3 tau = vring::normalized(richardson_diff(f, u, h));
    const Curve binormal = [&](double x) { return sampled_binormal(f, x, h); };
    const Vec3 b = binormal(u);
    const Vec3 n = vring::cross(b, tau);
    const Vec3 db = richardson_diff(binormal, u, h) / speed;
    return -vring::dot(db, n);
}

inline double relative_error(double got, double want)
{
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double relative_error(const Vec3& got, const Vec3& want)
{
    return vring::norm(got - want) / std::max(vring::norm(want), 1e-300);
}

inline vring::CoefficientTensor random_tensor(int J, int K, double scale, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    vring::CoefficientTensor c(J, K);
    for (double& x : c.flat()) x = u(rng);
    return c;
}

/// Correlation between the vortex and swirl axes of one column at t0 + dt,
/// after integrating the wave equations from the aligned state at t0 over a
/// single RK4 step (dt may be negative). nullopt on an infeasible column.
inline std::optional<double> column_corr(const vring::RingColumn& column, const vring::RingConfig& cfg,
                                         double dt)
{
    using namespace vring;
    const auto alpha0 = solve_initial_alignment(column.frame_at(cfg.t0).frame,
                                                column.point(cfg.t0).ds, cfg.eps_align);
    const auto rates = initial_alpha_rates(column, cfg.t0, cfg);
    if (!alpha0 || !rates) return std::nullopt;
    const WaveState init{cfg.t0, alpha0->alpha1, rates->alpha1, alpha0->alpha2, rates->alpha2};
    if (dt == 0.0) {
        const FrenetFrame f = column.frame_at(cfg.t0).frame;
        const Vec3 zeta = f.tau - init.alpha1 * f.n - init.alpha2 * f.b;
        return dot(normalized(zeta), normalized(column.point(cfg.t0).ds));
    }
    const auto y = integrate_wave([&](double t) { return wave_coefficients(column.kinematics(t)); },
                                  init, cfg.t0 + dt, 1)
                       .back();
    const FrenetFrame f = column.frame_at(y.t).frame;
    const Vec3 zeta = f.tau - y.alpha1 * f.n - y.alpha2 * f.b;
    return dot(normalized(zeta), normalized(column.point(y.t).ds));
}

/// Central difference of the axis correlation at t0. The exact derivative
/// is zero (the correlation peaks at 1 there), so the step is taken small
/// enough, 1e-6 (t1 - t0), for the estimate to sit at round-off.
inline std::optional<double> corr_rate_at_t0(const vring::RingColumn& column, const vring::RingConfig& cfg)
{
    const double h = 1e-6 * (cfg.t1 - cfg.t0);
    const auto after = column_corr(column, cfg, h);
    const auto before = column_corr(column, cfg, -h);
    if (!after || !before) return std::nullopt;
    return (*after - *before) / (2.0 * h);
}

/// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
public:
    explicit ScratchDir(const std::string& tag)
    {
        static std::uint64_t counter = 0;
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("vring_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~ScratchDir() { std::filesystem::remove_all(path_); }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text)
{
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace oracle
