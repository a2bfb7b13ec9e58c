#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "vring/errors.hpp"
#include "vring/objective_madc.hpp"

using namespace vring;

namespace {

RingConfig small_config()
{
    RingConfig cfg;
    cfg.J = 2;
    cfg.K = 3;
    cfg.n_time = 4;
    cfg.n_s = 8;
    return cfg;
}

AxisField synthetic_field(const RingConfig& cfg, double (*corr)(int i, int k), std::vector<bool> feasible)
{
    AxisField f;
    f.n_time = cfg.n_time;
    f.n_s = cfg.n_s;
    f.feasible = std::move(feasible);
    f.corr.assign(static_cast<std::size_t>(cfg.n_time + 1) * cfg.n_s, 0.0);
    for (int i = 0; i <= cfg.n_time; ++i) {
        for (int k = 0; k < cfg.n_s; ++k) {
            f.corr[f.at(i, k)] = f.feasible[k] ? corr(i, k) : std::numeric_limits<double>::quiet_NaN();
        }
    }
    return f;
}

std::vector<bool> all_feasible(const RingConfig& cfg) { return std::vector<bool>(cfg.n_s, true); }

} // namespace

TEST_CASE("perfect alignment scores one")
{
    const RingConfig cfg = small_config();
    const auto report = madc(synthetic_field(cfg, [](int, int) { return 1.0; }, all_feasible(cfg)), cfg);
    CHECK(report.madc == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(report.feasible_fraction == 1.0);
    CHECK(ranking_score(report) == doctest::Approx(1.0));
}

TEST_CASE("orthogonal axes score zero")
{
    const RingConfig cfg = small_config();
    CHECK(madc(synthetic_field(cfg, [](int, int) { return 0.0; }, all_feasible(cfg)), cfg).madc == 0.0);
}

TEST_CASE("absolute value: opposite orientation counts as aligned")
{
    const RingConfig cfg = small_config();
    const auto f = synthetic_field(cfg, [](int, int k) { return k % 2 == 0 ? 1.0 : -1.0; }, all_feasible(cfg));
    CHECK(madc(f, cfg).madc == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("trapezoid weights in time")
{
    // corr = t-node index / n_time is linear in t, so the trapezoid mean is 1/2 exactly.
    const RingConfig cfg = small_config();
    const auto f = synthetic_field(cfg, [](int i, int) { return i / 4.0; }, all_feasible(cfg));
    const auto report = madc(f, cfg);
    CHECK(report.madc == doctest::Approx(0.5).epsilon(1e-15));
    REQUIRE(report.per_time_mean.size() == 5u);
    CHECK(report.per_time_mean[2] == doctest::Approx(0.5));

    // Only the end nodes nonzero: weight 1/(2 n_time) each.
    const auto ends = synthetic_field(cfg, [](int i, int) { return (i == 0 || i == 4) ? 1.0 : 0.0; }, all_feasible(cfg));
    CHECK(madc(ends, cfg).madc == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("infeasible columns are excluded from the mean and counted in the fraction")
{
    const RingConfig cfg = small_config();
    std::vector<bool> feasible(cfg.n_s, true);
    feasible[1] = feasible[5] = false;
    const auto f = synthetic_field(cfg, [](int, int k) { return k < 4 ? 0.5 : 1.0; }, feasible);
    const auto report = madc(f, cfg);
    CHECK(report.feasible_fraction == 0.75);
    // Feasible columns: 0, 2, 3 at 0.5 and 4, 6, 7 at 1.0.
    CHECK(report.madc == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(std::isnan(report.per_s_mean[1]));
    CHECK(report.per_s_mean[0] == doctest::Approx(0.5));
    CHECK(ranking_score(report) == doctest::Approx(0.75 * 0.75));
}

TEST_CASE("no feasible column gives zero")
{
    const RingConfig cfg = small_config();
    const auto report = madc(synthetic_field(cfg, [](int, int) { return 1.0; }, std::vector<bool>(cfg.n_s, false)), cfg);
    CHECK(report.madc == 0.0);
    CHECK(report.feasible_fraction == 0.0);
}

TEST_CASE("dimension mismatch")
{
    const RingConfig cfg = small_config();
    RingConfig other = cfg;
    other.n_s = 16;
    const auto f = synthetic_field(cfg, [](int, int) { return 1.0; }, all_feasible(cfg));
    CHECK_THROWS_AS(madc(f, other), DimensionMismatch);
}

TEST_CASE("sign flips of the swirl axis leave the score unchanged")
{
    RingConfig cfg;
    cfg.J = 4;
    cfg.K = 6;
    cfg.n_s = 64;
    std::mt19937_64 rng(401);
    const auto c = oracle::random_tensor(cfg.J, cfg.K, cfg.c_max, rng);
    AxisField field = axis_field(c, cfg);
    const double before = madc(field, cfg).madc;
    for (std::size_t i = 0; i < field.corr.size(); i += 3) field.corr[i] = -field.corr[i];
    CHECK(madc(field, cfg).madc == before);
}

TEST_CASE("scores stay in [0, 1] on random trials")
{
    RingConfig cfg;
    cfg.J = 4;
    cfg.K = 6;
    cfg.n_s = 32;
    cfg.n_time = 16;
    std::mt19937_64 rng(402);
    for (int trial = 0; trial < 20; ++trial) {
        const auto report = madc(axis_field(oracle::random_tensor(cfg.J, cfg.K, cfg.c_max, rng), cfg), cfg);
        CHECK(report.madc >= 0.0);
        CHECK(report.madc <= 1.0);
        CHECK(report.feasible_fraction >= 0.0);
        CHECK(report.feasible_fraction <= 1.0);
    }
}

TEST_CASE("grid refinement changes the score little on a smooth trial")
{
    RingConfig coarse;
    coarse.J = 4;
    coarse.K = 6;
    coarse.n_time = 32;
    coarse.n_s = 64;
    RingConfig fine = coarse;
    fine.n_time = 64;
    fine.n_s = 128;
    CoefficientTensor c(coarse.J, coarse.K);
    c.at(2, 2, 1, 0) = 3.0;
    c.at(2, 2, 1, 1) = 1.0;
    c.at(1, 1, 2, 2) = 2.0;
    const double a = madc(axis_field(c, coarse), coarse).madc;
    const double b = madc(axis_field(c, fine), fine).madc;
    CHECK(std::abs(a - b) < 1e-3);
}
