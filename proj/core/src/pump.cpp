#include "pmsim/pump.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pmsim/error.hpp"
#include "pmsim/transfer.hpp"

namespace pmsim {

void PumpSpec::validate() const {
    if (components.empty() || components.size() > 2) {
        throw Error(ErrorCode::InvalidPump, "pump needs one or two Gaussian components");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorCode::InvalidPump, "pump sigma must be finite and > 0");
    }
    bool any_positive = false;
    for (const auto& c : components) {
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight) || !std::isfinite(c.center) ||
            !std::isfinite(c.phase)) {
            throw Error(ErrorCode::InvalidPump, "pump component weights must be finite and >= 0");
        }
        any_positive = any_positive || c.weight > 0.0;
    }
    if (!any_positive) throw Error(ErrorCode::InvalidPump, "all pump weights are zero");
}

double sigma_from_bandwidth(double bandwidth) {
    if (!(bandwidth > 0.0)) throw Error(ErrorCode::InvalidPump, "pump bandwidth must be > 0");
    return 2.0 * std::numbers::ln2 / (bandwidth * bandwidth);
}

double bandwidth_from_sigma(double sigma) { return std::sqrt(2.0 * std::numbers::ln2 / sigma); }

double PumpSpec::bandwidth() const noexcept { return bandwidth_from_sigma(sigma); }

PumpSpec PumpSpec::normalized() const {
    validate();
    PumpSpec out = *this;
    double largest = 0.0;
    for (const auto& c : components) largest = std::max(largest, c.weight);
    for (auto& c : out.components) c.weight /= largest;
    return out;
}

cdouble pump_amplitude(const PumpSpec& spec, double omega) {
    cdouble total{0.0, 0.0};
    for (const auto& c : spec.components) {
        const double x = omega - c.center;
        total += c.weight * std::exp(cdouble{-spec.sigma * x * x, -c.phase});
    }
    return total;
}

cdouble simpson(const std::vector<cdouble>& samples, double step) {
    const std::size_t n = samples.size();
    if (n < 3 || n % 2 == 0) {
        throw Error(ErrorCode::QuadratureWindowTooNarrow, "Simpson rule needs an odd node count >= 3");
    }
    cdouble odd{0.0, 0.0};
    cdouble even{0.0, 0.0};
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (k % 2 == 1) {
            odd += samples[k];
        } else {
            even += samples[k];
        }
    }
    return step / 3.0 * (samples.front() + 4.0 * odd + 2.0 * even + samples.back());
}

PumpConvolution convolve(const PumpSpec& raw_spec, const ResponseFn& pump_response,
                         const FrequencyGrid& idler, const FrequencyGrid& signal,
                         const QuadratureOptions& options, double min_feature_width) {
    const PumpSpec spec = raw_spec.normalized();
    idler.validate();
    signal.validate();
    if (std::abs(idler.step - signal.step) > 1e-12 * idler.step) {
        throw Error(ErrorCode::InvalidGrid, "idler and signal grids must share the same step");
    }

    const double gaussian_width = 1.0 / std::sqrt(spec.sigma);
    double lowest = spec.components.front().center;
    double highest = lowest;
    for (const auto& c : spec.components) {
        lowest = std::min(lowest, c.center);
        highest = std::max(highest, c.center);
    }
    const double half_extent = 0.5 * (highest - lowest) + options.window_widths * gaussian_width;

    double target_step = options.step;
    if (!(target_step > 0.0)) {
        double width = gaussian_width;
        if (min_feature_width > 0.0) width = std::min(width, min_feature_width);
        target_step = width / options.points_per_width;
    }
    auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half_extent / target_step));
    intervals += intervals % 2;
    intervals = std::max<std::size_t>(intervals, 2);
    const std::size_t nodes = intervals + 1;
    const double step = 2.0 * half_extent / static_cast<double>(intervals);

    PumpConvolution out;
    out.idler = idler;
    out.signal = signal;
    out.s_start = idler.start + signal.start;
    out.s_step = idler.step;
    out.quadrature = {step, -half_extent, half_extent, nodes};
    const std::size_t diagonals = idler.count + signal.count - 1;
    out.values.resize(diagonals);

    auto loaded = [&](double w) { return pump_response(w) * pump_amplitude(spec, w); };
    // Nodes are symmetric about s/2, so q and s - q share a sample: node k pairs with nodes - 1 - k.
    std::vector<cdouble> samples(nodes);
    std::vector<cdouble> integrand(nodes);
    double worst_edge = 0.0;
    for (std::size_t d = 0; d < diagonals; ++d) {
        const double s = out.sum_frequency(d);
        const double first = 0.5 * s - half_extent;
        for (std::size_t k = 0; k < nodes; ++k) samples[k] = loaded(first + static_cast<double>(k) * step);
        double peak = 0.0;
        for (std::size_t k = 0; k < nodes; ++k) {
            integrand[k] = samples[nodes - 1 - k] * samples[k];
            peak = std::max(peak, std::abs(integrand[k]));
        }
        const double edge = std::max(std::abs(integrand.front()), std::abs(integrand.back()));
        if (peak > 0.0) worst_edge = std::max(worst_edge, edge / peak);
        out.values[d] = simpson(integrand, step);
    }
    if (worst_edge > options.edge_tolerance) {
        std::ostringstream msg;
        msg << "integrand at the window edge is " << worst_edge << " of its maximum";
        throw Error(ErrorCode::QuadratureWindowTooNarrow, msg.str());
    }
    return out;
}

PumpConvolution convolve(const PumpSpec& spec, const MoleculeParams& params,
                         const FrequencyGrid& idler, const FrequencyGrid& signal,
                         const QuadratureOptions& options) {
    const ModeResponse mode = mode_response(params, FieldLabel::Pump);
    // Pole half-width of M_p sets the finest feature the integrand can have.
    const double pole_width = mode.damping() / 4.0;
    return convolve(spec, ResponseFn{mode}, idler, signal, options, pole_width);
}

}  // namespace pmsim
