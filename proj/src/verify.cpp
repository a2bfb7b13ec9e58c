#include "vring/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "vring/errors.hpp"

namespace vring {

namespace {

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : engine_(seed) {}
    double operator()(double lo, double hi)
    {
        return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

FrameMatrixInput random_frame_input(Uniform& u, double r_scale)
{
    FrameMatrixInput in;
    in.kappa = u(0.0, 2.0);
    in.torsion = u(-2.0, 2.0);
    in.alpha1 = u(-2.0, 2.0);
    in.alpha2 = u(-2.0, 2.0);
    in.dz_alpha1 = u(-2.0, 2.0);
    in.dz_alpha2 = u(-2.0, 2.0);
    in.R1 = u(-r_scale, r_scale);
    in.R2 = u(-r_scale, r_scale);
    return in;
}

} // namespace

FrameMatrixEntries frame_matrix_entries(const FrameMatrixInput& in)
{
    FrameMatrixEntries e;
    e.A = (1.0 - in.kappa * in.R1) + (in.R1 * in.dz_alpha1 + in.R2 * in.dz_alpha2);
    e.B = -in.R2 * in.torsion + (in.R1 * in.alpha1 + in.R2 * in.alpha2) * in.kappa;
    e.C = in.R1 * in.torsion;
    e.alpha1 = in.alpha1;
    e.alpha2 = in.alpha2;
    return e;
}

Mat3 frame_matrix(const FrameMatrixEntries& e)
{
    return {{{e.A, e.B, e.C}, {e.alpha1, 1.0, 0.0}, {e.alpha2, 0.0, 1.0}}};
}

Mat3 frame_matrix_inverse(const FrameMatrixEntries& e)
{
    const double D = e.det();
    if (!(std::abs(D) > 1e-8)) throw SingularD("frame matrix determinant D is (near) zero");
    const double inv = 1.0 / D;
    const double a1 = e.alpha1;
    const double a2 = e.alpha2;
    return {{{inv, -e.B * inv, -e.C * inv},
             {-a1 * inv, (e.A - e.C * a2) * inv, e.C * a1 * inv},
             {-a2 * inv, e.B * a2 * inv, (e.A - e.B * a1) * inv}}};
}

double check_inverse_matrix(const FrameMatrixEntries& e, const InverseFormula& inverse)
{
    const Mat3 m = frame_matrix(e);
    const Mat3 mi = inverse(e);
    double worst = 0.0;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k) acc += m[r][k] * mi[k][c];
            worst = std::max(worst, std::abs(acc - (r == c ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double check_inverse_matrix(const FrameMatrixInput& in, const InverseFormula& inverse)
{
    return check_inverse_matrix(frame_matrix_entries(in), inverse);
}

double dinv_linear_expansion(const FrameMatrixInput& in)
{
    const double first = (-in.kappa + in.dz_alpha1) - in.alpha1 * in.alpha1 * in.kappa -
                         in.torsion * in.alpha2;
    const double second = in.dz_alpha2 - (-in.torsion + in.alpha2 * in.kappa) * in.alpha1;
    return 1.0 - first * in.R1 - second * in.R2;
}

double check_dinv_expansion(const FrameMatrixInput& base, double dir1, double dir2)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        FrameMatrixInput in = base;
        in.R1 = eps * dir1;
        in.R2 = eps * dir2;
        const double D = frame_matrix_entries(in).det();
        if (!(std::abs(D) > 1e-8)) throw SingularD("D vanishes along the expansion sweep");
        const double remainder = std::abs(1.0 / D - dinv_linear_expansion(in));
        if (remainder == 0.0) continue;
        const double x = std::log10(eps);
        const double y = std::log10(remainder);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::infinity();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double check_leibniz_identity(const CurveSource& curve, double t, double h)
{
    const CurveJet here = curve(t);
    const double v = norm(here.d1);
    if (!(v > kDefaultEpsV)) throw ZeroSpeed("Leibniz check at a stationary point");
    const double v_t = dot(here.d1, here.d2) / v;

    auto unit_tangent = [&curve](double at) {
        const Vec3 d1 = curve(at).d1;
        return d1 / norm(d1);
    };
    auto central = [&](double step) {
        return (unit_tangent(t + step) - unit_tangent(t - step)) / (2.0 * step);
    };
    const Vec3 c1 = central(h);
    const Vec3 c2 = central(0.5 * h);
    const Vec3 c4 = central(0.25 * h);
    const Vec3 r1 = (4.0 * c2 - c1) / 3.0;
    const Vec3 r2 = (4.0 * c4 - c2) / 3.0;
    const Vec3 dt_tangent = (16.0 * r2 - r1) / 15.0;

    const Vec3 dz = here.d1 / v;
    const Vec3 dzz = dt_tangent / v;
    const Vec3 lhs = here.d2;
    const Vec3 rhs = v * v * dzz + v_t * dz;
    const double scale = std::max({norm(lhs), v * v * norm(dzz), std::abs(v_t)});
    if (scale == 0.0) return 0.0;
    return norm(lhs - rhs) / scale;
}

double check_leibniz_identity(const CoefficientTensor& c, const RingConfig& cfg, double t, double s)
{
    const RingColumn column(c, cfg, s);
    return check_leibniz_identity(
        [&column](double at) {
            const RingPoint p = column.point(at);
            return CurveJet{p.d1, p.d2};
        },
        t, 1e-2 * (cfg.t1 - cfg.t0));
}

std::pair<double, double> wave_equation_accelerations(const ClosureInput& in)
{
    const double q = in.v_tt / in.v;
    return {q * in.alpha1 + 2.0 * in.v * in.kappa_t + 4.0 * in.v_t * in.kappa, q * in.alpha2};
}

std::pair<double, double> check_closure_rearrangement(const ClosureInput& in, double alpha1_tt,
                                                      double alpha2_tt)
{
    const double v2 = in.v * in.v;
    const double dz_kappa = in.kappa_t / in.v;
    const double q = in.v_tt / in.v;
    const double k2 = in.kappa * in.kappa;

    const double lhs1 = -in.v_t * in.kappa - v2 * dz_kappa + alpha1_tt - v2 * k2 * in.alpha1;
    const double rhs1 = v2 * dz_kappa + 3.0 * in.v_t * in.kappa + q * in.alpha1 - v2 * k2 * in.alpha1;
    const double lhs2 = v2 * in.torsion * in.kappa + alpha2_tt - v2 * k2 * in.alpha2;
    const double rhs2 = q * in.alpha2 + v2 * in.torsion * in.kappa - v2 * k2 * in.alpha2;
    return {std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)};
}

std::pair<double, double> check_closure_rearrangement(const ClosureInput& in)
{
    const auto [a1, a2] = wave_equation_accelerations(in);
    return check_closure_rearrangement(in, a1, a2);
}

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options)
{
    std::vector<CheckResult> results;
    Uniform u(options.seed);

    {
        CheckResult r{"inverse_matrix", 0, 0.0, 1e-12, true, false};
        while (r.cases < options.inverse_cases) {
            const FrameMatrixInput in = random_frame_input(u, 0.1);
            const FrameMatrixEntries e = frame_matrix_entries(in);
            if (!(std::abs(e.det()) > 0.1)) continue;
            r.worst = std::max(r.worst, check_inverse_matrix(e, options.inverse));
            ++r.cases;
        }
        r.passed = r.worst <= r.tolerance;
        results.push_back(r);
    }
    {
        CheckResult r{"dinv_expansion_slope", 0, std::numeric_limits<double>::infinity(), 1.9, false,
                      false};
        for (int i = 0; i < options.dinv_cases; ++i) {
            const FrameMatrixInput base = random_frame_input(u, 0.0);
            const double angle = u(0.0, 2.0 * 3.141592653589793);
            const double dirs[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {std::cos(angle), std::sin(angle)}};
            for (const auto& d : dirs) {
                r.worst = std::min(r.worst, check_dinv_expansion(base, d[0], d[1]));
                ++r.cases;
            }
        }
        r.passed = r.worst >= r.tolerance;
        results.push_back(r);
    }
    {
        CheckResult r{"leibniz_identity", 0, 0.0, 1e-6, true, false};
        RingConfig cfg;
        cfg.J = 4;
        cfg.K = 6;
        while (r.cases < options.leibniz_cases) {
            CoefficientTensor c(cfg.J, cfg.K);
            for (double& x : c.flat()) x = u(-3.0, 3.0);
            const double t = u(cfg.t0, cfg.t1);
            const double s = u(0.0, 1.0);
            try {
                r.worst = std::max(r.worst, check_leibniz_identity(c, cfg, t, s));
                ++r.cases;
            } catch (const ZeroSpeed&) {
                continue;
            }
        }
        r.passed = r.worst < r.tolerance;
        results.push_back(r);
    }
    {
        CheckResult r{"closure_rearrangement", 0, 0.0, 1e-12, true, false};
        for (int i = 0; i < options.closure_cases; ++i) {
            ClosureInput in;
            in.v = u(0.5, 3.0);
            in.v_t = u(-2.0, 2.0);
            in.v_tt = u(-2.0, 2.0);
            in.kappa = u(0.0, 2.0);
            in.kappa_t = u(-2.0, 2.0);
            in.torsion = u(-2.0, 2.0);
            in.alpha1 = u(-2.0, 2.0);
            in.alpha2 = u(-2.0, 2.0);
            const auto [r1, r2] = check_closure_rearrangement(in);
            r.worst = std::max({r.worst, r1, r2});
            ++r.cases;
        }
        r.passed = r.worst <= r.tolerance;
        results.push_back(r);
    }
    return results;
}

} // namespace vring
