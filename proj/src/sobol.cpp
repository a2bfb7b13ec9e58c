#include "vring/sobol.hpp"

#include <bit>
#include <random>
#include <sstream>

#include "vring/errors.hpp"

namespace vring {

namespace {

#include "sobol_direction_numbers.inc"

// Unscrambled direction numbers, scaled so bit kBits-1 is the leading bit.
std::vector<std::uint32_t> base_directions(std::size_t dim)
{
    constexpr int bits = SobolSequence::kBits;
    std::vector<std::uint32_t> v(dim * bits, 0);
    for (std::size_t d = 0; d < dim; ++d) {
        std::uint32_t* row = &v[d * bits];
        if (d == 0) {
            for (int j = 0; j < bits; ++j) row[j] = 1;
        } else {
            const std::uint32_t poly = kSobolPoly[d];
            const int degree = std::bit_width(poly) - 1;
            for (int j = 0; j < degree; ++j) row[j] = kSobolInit[d][j];
            for (int j = degree; j < bits; ++j) {
                std::uint32_t next = row[j - degree];
                std::uint32_t pow2 = 1;
                for (int k = 0; k < degree; ++k) {
                    pow2 <<= 1;
                    if ((poly >> (degree - 1 - k)) & 1u) next ^= pow2 * row[j - k - 1];
                }
                row[j] = next;
            }
        }
        for (int j = 0; j < bits; ++j) row[j] <<= (bits - 1 - j);
    }
    return v;
}

} // namespace

std::size_t SobolSequence::max_dimension() { return kSobolMaxDim; }

SobolSequence::SobolSequence(std::size_t dim, bool scramble, std::uint64_t seed)
    : dim_(dim), shift_(dim, 0)
{
    if (dim > kSobolMaxDim) {
        std::ostringstream msg;
        msg << "Sobol' generator supports at most " << kSobolMaxDim << " dimensions, requested "
            << dim << "; reduce J or K";
        throw DimensionTooLarge(msg.str());
    }
    direction_ = base_directions(dim);
    if (!scramble) return;

    // Random lower-triangular (unit diagonal) bit matrix per dimension applied
    // to every direction number, then a random digital shift.
    std::mt19937_64 rng(seed);
    for (std::size_t d = 0; d < dim; ++d) {
        std::uint32_t lower[kBits];
        for (int r = 0; r < kBits; ++r) {
            // Row r (counted from the most significant bit) keeps bit r and
            // random bits above it.
            const std::uint32_t diag = 1u << (kBits - 1 - r);
            const std::uint32_t above = r == 0 ? 0u : ~((diag << 1) - 1u);
            lower[r] = diag | (static_cast<std::uint32_t>(rng() >> 32) & above);
        }
        for (int j = 0; j < kBits; ++j) {
            const std::uint32_t v = direction_[d * kBits + j];
            std::uint32_t out = 0;
            for (int r = 0; r < kBits; ++r) {
                const std::uint32_t parity = std::popcount(lower[r] & v) & 1u;
                out |= parity << (kBits - 1 - r);
            }
            direction_[d * kBits + j] = out;
        }
        shift_[d] = static_cast<std::uint32_t>(rng() >> 32);
    }
}

std::vector<double> SobolSequence::point(std::uint64_t index) const
{
    const std::uint64_t gray = index ^ (index >> 1);
    std::vector<double> out(dim_);
    constexpr double scale = 1.0 / 4294967296.0;
    for (std::size_t d = 0; d < dim_; ++d) {
        std::uint32_t x = shift_[d];
        std::uint64_t g = gray;
        for (int j = 0; g != 0 && j < kBits; ++j, g >>= 1) {
            if (g & 1u) x ^= direction_[d * kBits + j];
        }
        out[d] = x * scale;
    }
    return out;
}

} // namespace vring
