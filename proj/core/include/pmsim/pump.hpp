#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "pmsim/grid.hpp"
#include "pmsim/params.hpp"

namespace pmsim {

using cdouble = std::complex<double>;
using ResponseFn = std::function<cdouble(double)>;

struct PumpComponent {
    double weight = 1.0;  // sqrt(A) or sqrt(B)
    double center = 0.0;
    double phase = 0.0;   // phi_a / 2 or phi_b / 2

    friend bool operator==(const PumpComponent&, const PumpComponent&) = default;
};

// Sum of one or two Gaussian spectral components sharing the exponent sigma:
//   alpha(w) = sum_k weight_k exp(-sigma (w - center_k)^2 - i phase_k)
struct PumpSpec {
    std::vector<PumpComponent> components;
    double sigma = 1.0;

    // Throws InvalidPump unless 1 <= |components| <= 2, weights >= 0 with one > 0, sigma > 0.
    void validate() const;

    // FWHM of |alpha|^2 for a single component.
    double bandwidth() const noexcept;

    // Copy with weights scaled so the largest is 1.
    PumpSpec normalized() const;

    friend bool operator==(const PumpSpec&, const PumpSpec&) = default;
};

double sigma_from_bandwidth(double bandwidth);
double bandwidth_from_sigma(double sigma);

cdouble pump_amplitude(const PumpSpec& spec, double omega);

struct QuadratureOptions {
    // Simpson nodes per characteristic width (the smaller of 1/sqrt(sigma) and the
    // pump-mode pole half-width); ignored when `step` > 0.
    double points_per_width = 32.0;
    double step = 0.0;
    // Integration window half-extent beyond the pump-centre spread, in units of 1/sqrt(sigma).
    double window_widths = 6.0;
    double edge_tolerance = 1e-8;
};

// The window moves with the anti-diagonal: for sum frequency s it spans
// s/2 + [lower, upper], which holds every product alpha_k(s - q) alpha_l(q).
struct QuadratureInfo {
    double step = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::size_t nodes = 0;
};

// Pump convolution I_p(s) evaluated once per anti-diagonal s = w_i + w_s of a
// pair of uniform grids with equal step. Entry (i, j) of the 2D map is
// values[i + j].
struct PumpConvolution {
    FrequencyGrid idler;
    FrequencyGrid signal;
    double s_start = 0.0;
    double s_step = 0.0;
    std::vector<cdouble> values;
    QuadratureInfo quadrature;

    cdouble at(std::size_t i, std::size_t j) const noexcept { return values[i + j]; }
    double sum_frequency(std::size_t k) const noexcept {
        return s_start + static_cast<double>(k) * s_step;
    }
};

// Both grids must share the same step (InvalidGrid otherwise). `pump_response`
// stands in for the pump transfer function; `min_feature_width` bounds the
// quadrature step from above alongside 1/sqrt(sigma) (pass 0 to ignore).
PumpConvolution convolve(const PumpSpec& spec, const ResponseFn& pump_response,
                         const FrequencyGrid& idler, const FrequencyGrid& signal,
                         const QuadratureOptions& options = {}, double min_feature_width = 0.0);

// Same with the physical pump transfer function M_p of `params`.
PumpConvolution convolve(const PumpSpec& spec, const MoleculeParams& params,
                         const FrequencyGrid& idler, const FrequencyGrid& signal,
                         const QuadratureOptions& options = {});

// Composite Simpson over the window [lower, upper] with `nodes` (odd) points.
// Exposed for reuse in the anti-diagonal evaluation and in tests.
cdouble simpson(const std::vector<cdouble>& samples, double step);

}  // namespace pmsim
