#include "vring/ring_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "vring/errors.hpp"

namespace vring {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTransportOmega = 12.0 * std::numbers::pi;

double fractional(double x) { return x - std::floor(x); }

struct PolyJet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

// sum_j a[j] * tau^(j+1) and its first three derivatives in tau.
PolyJet eval_series(const std::vector<double>& a, double tau)
{
    PolyJet out;
    double p0 = 1.0; // tau^(n-1)
    double p1 = 0.0; // tau^(n-2)
    double p2 = 0.0; // tau^(n-3)
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double n = static_cast<double>(j + 1);
        const double coef = a[j];
        out.value += coef * p0 * tau;
        out.d1 += n * coef * p0;
        if (j >= 1) out.d2 += n * (n - 1.0) * coef * p1;
        if (j >= 2) out.d3 += n * (n - 1.0) * (n - 2.0) * coef * p2;
        p2 = p1;
        p1 = p0;
        p0 *= tau;
    }
    return out;
}

double theta_of(double s, AngleConvention convention)
{
    return convention == AngleConvention::turns ? kTwoPi * fractional(s) : s;
}

} // namespace

void RingConfig::validate() const
{
    auto fail = [](const std::string& what) { throw ConfigError("invalid ring config: " + what); };
    if (!(t0 < t1)) fail("t0 must be < t1");
    if (n_time < 2) fail("n_time must be >= 2");
    if (n_s < 4) fail("n_s must be >= 4");
    if (!(delta >= 0.0 && delta < 1.0)) fail("delta must lie in [0, 1)");
    if (!(c_max > 0.0)) fail("c_max must be > 0");
    if (J < 0) fail("J must be >= 0");
    if (K < 0) fail("K must be >= 0");
    if (!(eps_v > 0.0)) fail("eps_v must be > 0");
    if (!(eps_kappa >= 0.0)) fail("eps_kappa must be >= 0");
    if (!(eps_align >= 0.0)) fail("eps_align must be >= 0");
    if (!(fd_step_factor > 0.0 && fd_step_factor < 1.0)) fail("fd_step_factor must lie in (0, 1)");
}

CoefficientTensor::CoefficientTensor(int J, int K)
    : J_(J), K_(K), data_(static_cast<std::size_t>(4 * (J + 1) * (K + 1)), 0.0)
{
    if (J < 0 || K < 0) throw ConfigError("coefficient tensor needs J >= 0 and K >= 0");
}

CoefficientTensor::CoefficientTensor(int J, int K, std::vector<double> flat)
    : CoefficientTensor(J, K)
{
    if (flat.size() != data_.size()) {
        std::ostringstream msg;
        msg << "coefficient tensor for J=" << J << ", K=" << K << " needs " << data_.size()
            << " values, got " << flat.size();
        throw DimensionMismatch(msg.str());
    }
    data_ = std::move(flat);
}

std::size_t CoefficientTensor::index(int l, int m, int j, int k) const
{
    return static_cast<std::size_t>((((l - 1) * 2 + (m - 1)) * (J_ + 1) + j) * (K_ + 1) + k);
}

double CoefficientTensor::max_abs() const
{
    double m = 0.0;
    for (double c : data_) m = std::max(m, std::abs(c));
    return m;
}

void check_coefficients(const CoefficientTensor& c, const RingConfig& cfg)
{
    if (c.J() != cfg.J || c.K() != cfg.K) {
        std::ostringstream msg;
        msg << "coefficient shape (J=" << c.J() << ", K=" << c.K() << ") does not match config (J="
            << cfg.J << ", K=" << cfg.K << ")";
        throw ConfigError(msg.str());
    }
    for (double v : c.flat()) {
        if (!std::isfinite(v) || std::abs(v) > cfg.c_max) {
            std::ostringstream msg;
            msg << "coefficient " << v << " outside [-" << cfg.c_max << ", " << cfg.c_max << "]";
            throw ConfigError(msg.str());
        }
    }
}

TransportJet transport_gamma(double t)
{
    const double w = kTransportOmega;
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    return {1.0 - c, w * s, w * w * c, -w * w * w * s};
}

double radius_profile(double s, double delta, AngleConvention convention)
{
    const double theta = theta_of(s, convention);
    const double a = (1.0 - delta) * std::cos(theta);
    const double b = (1.0 + delta) * std::sin(theta);
    return (1.0 + delta) * (1.0 - delta) / (2.0 * std::sqrt(a * a + b * b));
}

double radius_profile_ds(double s, double delta, AngleConvention convention)
{
    const double theta = theta_of(s, convention);
    const double a = (1.0 - delta) * std::cos(theta);
    const double b = (1.0 + delta) * std::sin(theta);
    const double q = a * a + b * b;
    const double dq = 4.0 * delta * std::sin(2.0 * theta);
    const double dr_dtheta = -(1.0 + delta) * (1.0 - delta) * dq / (4.0 * q * std::sqrt(q));
    return convention == AngleConvention::turns ? kTwoPi * dr_dtheta : dr_dtheta;
}

RingColumn::RingColumn(const CoefficientTensor& c, const RingConfig& cfg, double s)
    : s_(s),
      t0_(cfg.t0),
      radius_(radius_profile(s, cfg.delta, cfg.angle_convention)),
      radius_ds_(radius_profile_ds(s, cfg.delta, cfg.angle_convention)),
      eps_v_(cfg.eps_v),
      eps_kappa_(cfg.eps_kappa),
      fd_step_(cfg.fd_step())
{
    if (c.J() != cfg.J || c.K() != cfg.K) {
        throw DimensionMismatch("coefficient tensor shape does not match ring config");
    }
    const double frac = fractional(s);
    e_r_ = {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac), 0.0};
    e_theta_ = {-e_r_.y, e_r_.x, 0.0};

    const int J = c.J();
    const int K = c.K();
    std::vector<double> sin_k(K + 1);
    std::vector<double> cos_k(K + 1);
    for (int k = 0; k <= K; ++k) {
        const double phase = kTwoPi * fractional(k * frac);
        sin_k[k] = std::sin(phase);
        cos_k[k] = std::cos(phase);
    }
    const double norm = 1.0 / (K + 1);
    for (int l = 0; l < 2; ++l) {
        series_[l].assign(J + 1, 0.0);
        series_ds_[l].assign(J + 1, 0.0);
        for (int j = 0; j <= J; ++j) {
            double val = 0.0;
            double val_ds = 0.0;
            for (int k = 0; k <= K; ++k) {
                const double cs = c.at(l + 1, 1, j, k);
                const double cc = c.at(l + 1, 2, j, k);
                val += cs * sin_k[k] + cc * cos_k[k];
                val_ds += kTwoPi * k * (cs * cos_k[k] - cc * sin_k[k]);
            }
            series_[l][j] = norm * val;
            series_ds_[l][j] = norm * val_ds;
        }
    }
}

std::array<DeformationJet, 2> RingColumn::deformation(double t) const
{
    const double tau = t - t0_;
    std::array<DeformationJet, 2> out;
    for (int l = 0; l < 2; ++l) {
        const PolyJet p = eval_series(series_[l], tau);
        out[l] = {p.value, p.d1, p.d2, p.d3, eval_series(series_ds_[l], tau).value};
    }
    return out;
}

RingPoint RingColumn::point(double t) const
{
    const TransportJet g = transport_gamma(t);
    const auto def = deformation(t);
    const DeformationJet& g1 = def[0];
    const DeformationJet& g2 = def[1];
    const Vec3 z_hat{0.0, 0.0, 1.0};

    const double radial = radius_ + g.value + g1.value;
    RingPoint p;
    p.position = radial * e_r_ + g2.value * z_hat;
    p.d1 = (g.d1 + g1.dt) * e_r_ + g2.dt * z_hat;
    p.d2 = (g.d2 + g1.dtt) * e_r_ + g2.dtt * z_hat;
    p.d3 = (g.d3 + g1.dttt) * e_r_ + g2.dttt * z_hat;
    p.ds = (radius_ds_ + g1.ds) * e_r_ + (kTwoPi * radial) * e_theta_ + g2.ds * z_hat;
    return p;
}

TrajectoryKinematics RingColumn::frame_at(double t) const
{
    const RingPoint p = point(t);
    return frame_from_derivatives(p.d1, p.d2, p.d3, eps_kappa_, eps_v_);
}

double RingColumn::curvature(double t) const
{
    const RingPoint p = point(t);
    const double v = norm(p.d1);
    if (!(v > eps_v_)) {
        std::ostringstream msg;
        msg << "stationary trajectory point at t=" << t << ", s=" << s_;
        throw ZeroSpeed(msg.str());
    }
    return curvature_from_derivatives(p.d1, p.d2);
}

TrajectoryKinematics RingColumn::kinematics(double t) const
{
    TrajectoryKinematics kin = frame_at(t);
    const double h = fd_step_;
    kin.kappa_t = (curvature(t + h) - curvature(t - h)) / (2.0 * h);
    return kin;
}

std::array<DeformationJet, 2> deformation_eval(double t, double s, const CoefficientTensor& c,
                                               const RingConfig& cfg)
{
    return RingColumn(c, cfg, s).deformation(t);
}

RingPoint phi_eval(double t, double s, const CoefficientTensor& c, const RingConfig& cfg)
{
    return RingColumn(c, cfg, s).point(t);
}

TrajectoryKinematics kinematics_at(double t, double s, const CoefficientTensor& c,
                                   const RingConfig& cfg)
{
    return RingColumn(c, cfg, s).kinematics(t);
}

} // namespace vring
