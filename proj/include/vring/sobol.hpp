#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vring {

/// Sobol' points (Joe-Kuo direction numbers, Gray-code order) with an
/// optional linear matrix scramble plus digital shift.
///
/// Point i is computed directly from i, so any prefix of the sequence is
/// independent of how many points are drawn later.
class SobolSequence {
public:
    static constexpr int kBits = 32;

    /// Throws DimensionTooLarge if dim exceeds max_dimension().
    SobolSequence(std::size_t dim, bool scramble, std::uint64_t seed);

    static std::size_t max_dimension();

    std::size_t dimension() const { return dim_; }

    /// Coordinates of point `index` in [0, 1).
    std::vector<double> point(std::uint64_t index) const;

private:
    std::size_t dim_;
    // direction_[d * kBits + b] is the b-th direction number of dimension d.
    std::vector<std::uint32_t> direction_;
    std::vector<std::uint32_t> shift_;
};

} // namespace vring
