#include "pmsim/grid.hpp"

#include <cmath>
#include <sstream>

#include "pmsim/error.hpp"

namespace pmsim {

FrequencyGrid FrequencyGrid::centered(double center, double half_width, std::size_t count) {
    if (count < 2 || !(half_width > 0.0)) {
        throw Error(ErrorCode::InvalidGrid, "centered grid needs count >= 2 and half_width > 0");
    }
    return {center - half_width, 2.0 * half_width / static_cast<double>(count - 1), count};
}

std::vector<double> FrequencyGrid::values() const {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = (*this)[k];
    return out;
}

void FrequencyGrid::validate() const {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start)) {
        throw Error(ErrorCode::InvalidGrid, "grid step must be finite and > 0");
    }
    if (count < kMinCount) {
        std::ostringstream msg;
        msg << "grid count " << count << " is below the minimum of " << kMinCount;
        throw Error(ErrorCode::InvalidGrid, msg.str());
    }
}

}  // namespace pmsim
