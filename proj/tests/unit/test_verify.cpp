#include <doctest.h>

#include <cmath>
#include <random>
#include <utility>

#include "oracles.hpp"
#include "vring/errors.hpp"
#include "vring/verify.hpp"

using namespace vring;

namespace {

// Inverse by Gauss-Jordan elimination with partial pivoting.
Mat3 dense_inverse(Mat3 m)
{
    Mat3 inv{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double p = m[col][col];
        for (int j = 0; j < 3; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col];
            for (int j = 0; j < 3; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

double max_diff(const Mat3& a, const Mat3& b)
{
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    }
    return worst;
}

FrameMatrixInput random_input(std::mt19937_64& rng, double r_scale)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FrameMatrixInput in;
    in.kappa = 1.0 + u(rng);
    in.torsion = u(rng);
    in.alpha1 = u(rng);
    in.alpha2 = u(rng);
    in.dz_alpha1 = u(rng);
    in.dz_alpha2 = u(rng);
    in.R1 = r_scale * u(rng);
    in.R2 = r_scale * u(rng);
    return in;
}

} // namespace

TEST_CASE("inverse of the worked example")
{
    const FrameMatrixEntries e{1.1, 0.2, -0.3, 0.4, 0.5};
    CHECK(e.det() == doctest::Approx(1.17).epsilon(1e-15));
    CHECK(check_inverse_matrix(e) <= 1e-12);
    CHECK(max_diff(frame_matrix_inverse(e), dense_inverse(frame_matrix(e))) <= 1e-14);
}

TEST_CASE("identity matrix")
{
    const FrameMatrixEntries e{};
    CHECK(check_inverse_matrix(e) == 0.0);
    CHECK(max_diff(frame_matrix(e), Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}) == 0.0);
}

TEST_CASE("matrix entries follow the frame formulas")
{
    FrameMatrixInput in;
    in.kappa = 0.5;
    in.torsion = 0.25;
    in.alpha1 = 0.4;
    in.alpha2 = -0.2;
    in.dz_alpha1 = 1.5;
    in.dz_alpha2 = -1.0;
    in.R1 = 0.1;
    in.R2 = 0.05;
    const auto e = frame_matrix_entries(in);
    CHECK(e.A == doctest::Approx(1.0 - 0.05 + 0.15 - 0.05));
    CHECK(e.B == doctest::Approx(-0.0125 + (0.04 - 0.01) * 0.5));
    CHECK(e.C == doctest::Approx(0.025));
    CHECK(e.alpha1 == 0.4);
    CHECK(e.alpha2 == -0.2);
}

TEST_CASE("closed-form inverse agrees with a dense solve")
{
    std::mt19937_64 rng(701);
    int cases = 0;
    while (cases < 1000) {
        const auto e = frame_matrix_entries(random_input(rng, 0.1));
        if (!(std::abs(e.det()) > 0.1)) continue;
        CHECK(check_inverse_matrix(e) <= 1e-12);
        CHECK(max_diff(frame_matrix_inverse(e), dense_inverse(frame_matrix(e))) <= 1e-11);
        ++cases;
    }
}

TEST_CASE("singular matrices are rejected")
{
    const FrameMatrixEntries e{0.0, 0.0, 0.0, 0.3, 0.4};
    CHECK_THROWS_AS(frame_matrix_inverse(e), SingularD);
    CHECK_THROWS_AS(check_inverse_matrix(e), SingularD);
}

TEST_CASE("remainder of the first-order expansion is quadratic")
{
    std::mt19937_64 rng(702);
    for (int i = 0; i < 50; ++i) {
        const auto base = random_input(rng, 0.0);
        CHECK(check_dinv_expansion(base, 1.0, 0.0) >= 1.9);
        CHECK(check_dinv_expansion(base, 0.0, 1.0) >= 1.9);
        CHECK(check_dinv_expansion(base, 0.6, -0.8) >= 1.9);
    }
    // All first-order coefficients vanish and D stays 1.
    CHECK(std::isinf(check_dinv_expansion(FrameMatrixInput{}, 1.0, 0.0)));
}

TEST_CASE("expansion coefficients match a finite difference of 1/D")
{
    std::mt19937_64 rng(703);
    for (int i = 0; i < 20; ++i) {
        FrameMatrixInput in = random_input(rng, 0.0);
        auto inv_det = [&](double r1, double r2) {
            FrameMatrixInput p = in;
            p.R1 = r1;
            p.R2 = r2;
            return 1.0 / frame_matrix_entries(p).det();
        };
        auto linear = [&](double r1, double r2) {
            FrameMatrixInput p = in;
            p.R1 = r1;
            p.R2 = r2;
            return dinv_linear_expansion(p);
        };
        const double h = 1e-5;
        const double d1 = (inv_det(h, 0) - inv_det(-h, 0)) / (2 * h);
        const double d2 = (inv_det(0, h) - inv_det(0, -h)) / (2 * h);
        CHECK(linear(1.0, 0.0) - 1.0 == doctest::Approx(d1).epsilon(1e-6));
        CHECK(linear(0.0, 1.0) - 1.0 == doctest::Approx(d2).epsilon(1e-6));
    }
}

TEST_CASE("Leibniz identity on radial lines")
{
    RingConfig cfg;
    cfg.J = 4;
    cfg.K = 6;
    const auto c = CoefficientTensor::zeros(cfg);
    for (double t : {0.3, 0.52, 0.77}) {
        for (double s : {0.1, 0.4, 0.9}) CHECK(check_leibniz_identity(c, cfg, t, s) <= 1e-12);
    }
}

TEST_CASE("Leibniz identity on random deformations")
{
    RingConfig cfg;
    cfg.J = 4;
    cfg.K = 6;
    std::mt19937_64 rng(704);
    std::uniform_real_distribution<double> time(cfg.t0, cfg.t1);
    std::uniform_real_distribution<double> arc(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const auto c = oracle::random_tensor(cfg.J, cfg.K, 3.0, rng);
        CHECK(check_leibniz_identity(c, cfg, time(rng), arc(rng)) < 1e-6);
    }
}

TEST_CASE("Leibniz identity on a unit-speed helix")
{
    const double r = 0.6;
    const double h = 0.8;
    auto helix = [&](double t) {
        return CurveJet{{-r * std::sin(t), r * std::cos(t), h}, {-r * std::cos(t), -r * std::sin(t), 0.0}};
    };
    for (double t : {0.0, 1.0, 2.5}) CHECK(check_leibniz_identity(helix, t, 1e-2) <= 1e-10);
    CHECK_THROWS_AS(check_leibniz_identity([](double) { return CurveJet{}; }, 0.0, 1e-2), ZeroSpeed);
}

TEST_CASE("closure equations rearrange into the wave equations")
{
    std::mt19937_64 rng(705);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        ClosureInput in;
        in.v = 0.5 + std::abs(u(rng));
        in.v_t = u(rng);
        in.v_tt = u(rng);
        in.kappa = std::abs(u(rng));
        in.kappa_t = u(rng);
        in.torsion = u(rng);
        in.alpha1 = u(rng);
        in.alpha2 = u(rng);
        const auto [r1, r2] = check_closure_rearrangement(in);
        CHECK(r1 <= 1e-12);
        CHECK(r2 <= 1e-12);
        // A wrong acceleration is detected.
        const auto [a1, a2] = wave_equation_accelerations(in);
        CHECK(check_closure_rearrangement(in, a1 + 1e-3, a2).first > 1e-6);
    }
}

TEST_CASE("closure special cases")
{
    ClosureInput flat;
    flat.v = 2.0;
    flat.v_tt = 0.6;
    flat.alpha1 = 0.7;
    flat.alpha2 = -0.4;
    flat.torsion = 1.3;
    const auto [a1, a2] = wave_equation_accelerations(flat);
    CHECK(a1 == doctest::Approx(0.3 * 0.7));
    CHECK(a2 == doctest::Approx(0.3 * -0.4));
    const auto [r1, r2] = check_closure_rearrangement(flat, 0.3 * 0.7, 0.3 * -0.4);
    CHECK(r1 == 0.0);
    CHECK(r2 == 0.0);
}

TEST_CASE("verification suite")
{
    const auto results = run_verify_suite();
    REQUIRE(results.size() == 4u);
    for (const auto& r : results) {
        INFO(r.name << " worst " << r.worst);
        CHECK(r.passed);
        CHECK(r.cases >= 100);
    }
    CHECK(results[0].cases == 1000);
    CHECK(results[3].cases == 1000);
}

TEST_CASE("verification suite catches a sign error in the inverse")
{
    VerifyOptions opts;
    opts.inverse = [](const FrameMatrixEntries& e) {
        Mat3 m = frame_matrix_inverse(e);
        m[0][1] = -m[0][1];
        return m;
    };
    const auto results = run_verify_suite(opts);
    CHECK_FALSE(results[0].passed);
    CHECK(results[1].passed);
}
