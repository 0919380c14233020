#pragma once

#include <cstddef>
#include <vector>

namespace pmsim {

// Uniform discretization of one frequency axis: start + k * step, k < count.
struct FrequencyGrid {
    double start = 0.0;
    double step = 0.0;
    std::size_t count = 0;

    static constexpr std::size_t kMinCount = 64;

    static FrequencyGrid centered(double center, double half_width, std::size_t count);

    double operator[](std::size_t k) const noexcept { return start + static_cast<double>(k) * step; }
    double last() const noexcept { return (*this)[count - 1]; }
    std::vector<double> values() const;

    // Throws InvalidGrid unless step > 0 and count >= kMinCount.
    void validate() const;

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

}  // namespace pmsim
