#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vring/spectral.hpp"

using namespace vring;

namespace {

RingConfig desk_config()
{
    RingConfig cfg;
    cfg.J = 4;
    cfg.K = 6;
    return cfg;
}

// s-mean of the squared deformation by an equispaced rule; exact for the
// trigonometric polynomials involved.
double mean_square(const CoefficientTensor& c, double t, const RingConfig& cfg, SpectrumComponent component)
{
    const int n = 4096;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto g = deformation_eval(t, static_cast<double>(i) / n, c, cfg);
        if (component != SpectrumComponent::gamma2) acc += g[0].value * g[0].value;
        if (component != SpectrumComponent::gamma1) acc += g[1].value * g[1].value;
    }
    return acc / n;
}

} // namespace

TEST_CASE("a single cosine mode")
{
    const RingConfig cfg = desk_config();
    CoefficientTensor c(cfg.J, cfg.K);
    c.at(1, 2, 0, 3) = 7.0;
    const double t = cfg.t0 + 0.5 * (cfg.t1 - cfg.t0);
    const auto spec = mode_energies(c, t, cfg);
    const double amp = 7.0 * (t - cfg.t0) / (cfg.K + 1);
    for (int k = 0; k <= cfg.K; ++k) {
        CHECK(spec.energies[k] == doctest::Approx(k == 3 ? amp * amp : 0.0));
        CHECK(spec.dominant[k] == (k == 3));
    }
    CHECK(dominant_mode_count(spec) == 1);
    CHECK(mode_energies(c, t, cfg, SpectrumComponent::gamma2).energies[3] == 0.0);
}

TEST_CASE("zero coefficients have no dominant mode")
{
    const RingConfig cfg = desk_config();
    const auto spec = mode_energies(CoefficientTensor::zeros(cfg), cfg.t1, cfg);
    CHECK(dominant_mode_count(spec) == 0);
    CHECK(parseval_mean_square(spec) == 0.0);
    // Every deformation vanishes at t0.
    std::mt19937_64 rng(601);
    const auto c = oracle::random_tensor(cfg.J, cfg.K, cfg.c_max, rng);
    CHECK(dominant_mode_count(mode_energies(c, cfg.t0, cfg)) == 0);
}

TEST_CASE("energies satisfy Parseval against quadrature of the deformation")
{
    const RingConfig cfg = desk_config();
    std::mt19937_64 rng(602);
    std::uniform_real_distribution<double> time(cfg.t0, cfg.t1);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = oracle::random_tensor(cfg.J, cfg.K, cfg.c_max, rng);
        const double t = time(rng);
        for (auto comp : {SpectrumComponent::gamma1, SpectrumComponent::gamma2, SpectrumComponent::both}) {
            const double want = mean_square(c, t, cfg, comp);
            const double got = parseval_mean_square(mode_energies(c, t, cfg, comp));
            CHECK(oracle::relative_error(got, want) <= 1e-8);
        }
    }
}

TEST_CASE("equal energies are all dominant")
{
    const RingConfig cfg = desk_config();
    CoefficientTensor c(cfg.J, cfg.K);
    for (int k = 0; k <= cfg.K; ++k) c.at(2, 2, 1, k) = 5.0;
    CHECK(dominant_mode_count(mode_energies(c, cfg.t1, cfg)) == cfg.K + 1);
}

TEST_CASE("threshold is relative to the largest mode")
{
    const RingConfig cfg = desk_config();
    CoefficientTensor c(cfg.J, cfg.K);
    c.at(1, 1, 0, 1) = 10.0;
    c.at(1, 1, 0, 2) = std::sqrt(10.0);  // energy ratio exactly 0.1
    c.at(1, 1, 0, 4) = 3.0;              // energy ratio 0.09
    const auto spec = mode_energies(c, cfg.t1, cfg);
    CHECK(spec.dominant[1]);
    CHECK(spec.dominant[2]);
    CHECK_FALSE(spec.dominant[4]);
    CHECK(dominant_mode_count(mode_energies(c, cfg.t1, cfg, SpectrumComponent::both, 0.05)) == 3);
}

TEST_CASE("spectrum CSV")
{
    const RingConfig cfg = desk_config();
    CoefficientTensor c(cfg.J, cfg.K);
    c.at(1, 2, 0, 0) = 7.0;
    const std::string csv = spectrum_to_csv(mode_energies(c, cfg.t1, cfg));
    CHECK(csv.rfind("k,E_k,dominant\n0,", 0) == 0);
    CHECK(csv.find(",1\n1,0,0\n") != std::string::npos);
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == static_cast<std::size_t>(cfg.K + 2));
}
