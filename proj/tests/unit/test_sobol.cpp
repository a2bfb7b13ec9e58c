#include <doctest.h>

#include <array>
#include <set>
#include <vector>

#include "vring/errors.hpp"
#include "vring/sobol.hpp"

using namespace vring;

// Reference points from scipy.stats.qmc.Sobol(d, scramble=False), which uses
// the same Joe-Kuo direction numbers in Gray-code order.

TEST_CASE("first eight points match the reference in six dimensions")
{
    const std::array<std::array<double, 6>, 8> want{{
        {0, 0, 0, 0, 0, 0},
        {0.5, 0.5, 0.5, 0.5, 0.5, 0.5},
        {0.75, 0.25, 0.25, 0.25, 0.75, 0.75},
        {0.25, 0.75, 0.75, 0.75, 0.25, 0.25},
        {0.375, 0.375, 0.625, 0.875, 0.375, 0.125},
        {0.875, 0.875, 0.125, 0.375, 0.875, 0.625},
        {0.625, 0.125, 0.875, 0.625, 0.625, 0.875},
        {0.125, 0.625, 0.375, 0.125, 0.125, 0.375},
    }};
    const SobolSequence seq(6, false, 0);
    for (std::size_t i = 0; i < want.size(); ++i) {
        const auto p = seq.point(i);
        for (std::size_t d = 0; d < 6; ++d) CHECK(p[d] == want[i][d]);
    }
}

TEST_CASE("high dimensions match the reference")
{
    const std::array<std::size_t, 6> dims{1, 7, 100, 500, 923, 1023};
    struct Row {
        std::uint64_t index;
        std::array<double, 6> values;
    };
    const std::array<Row, 4> rows{{
        {5, {0.875, 0.375, 0.125, 0.875, 0.125, 0.375}},
        {13, {0.6875, 0.5625, 0.1875, 0.3125, 0.3125, 0.4375}},
        {37, {0.640625, 0.796875, 0.359375, 0.171875, 0.453125, 0.734375}},
        {63, {0.796875, 0.140625, 0.578125, 0.640625, 0.859375, 0.515625}},
    }};
    const SobolSequence seq(1024, false, 0);
    for (const auto& row : rows) {
        const auto p = seq.point(row.index);
        for (std::size_t j = 0; j < dims.size(); ++j) CHECK(p[dims[j]] == row.values[j]);
    }
}

TEST_CASE("dimension limit")
{
    CHECK(SobolSequence::max_dimension() == 1024u);
    CHECK_NOTHROW(SobolSequence(1024, true, 1));
    CHECK_THROWS_AS(SobolSequence(1025, true, 1), DimensionTooLarge);
}

TEST_CASE("scrambled points lie in [0, 1) and are reproducible")
{
    const SobolSequence a(140, true, 42);
    const SobolSequence b(140, true, 42);
    const SobolSequence other(140, true, 43);
    bool differs = false;
    for (std::uint64_t i = 0; i < 256; ++i) {
        const auto p = a.point(i);
        CHECK(p == b.point(i));
        if (p != other.point(i)) differs = true;
        for (double x : p) {
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
        }
    }
    CHECK(differs);
}

TEST_CASE("every one-dimensional projection is stratified")
{
    // The first 2^m points of each coordinate hit every interval
    // [j / 2^m, (j + 1) / 2^m) exactly once, scrambled or not.
    for (bool scramble : {false, true}) {
        const SobolSequence seq(64, scramble, 9);
        const int m = 7;
        const std::uint64_t n = 1u << m;
        std::vector<std::vector<int>> hits(64, std::vector<int>(n, 0));
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto p = seq.point(i);
            for (std::size_t d = 0; d < 64; ++d) ++hits[d][static_cast<std::size_t>(p[d] * n)];
        }
        for (const auto& h : hits) {
            for (int count : h) CHECK(count == 1);
        }
    }
}

TEST_CASE("points are independent of how many are drawn")
{
    const SobolSequence seq(20, true, 5);
    const auto late = seq.point(1000);
    std::vector<std::vector<double>> prefix;
    for (std::uint64_t i = 0; i <= 1000; ++i) prefix.push_back(seq.point(i));
    CHECK(prefix.back() == late);
    std::set<std::vector<double>> distinct(prefix.begin(), prefix.end());
    CHECK(distinct.size() == prefix.size());
}
