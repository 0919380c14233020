#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "pmsim/grid.hpp"
#include "pmsim/jsa.hpp"
#include "pmsim/params.hpp"

namespace pmsim {

// Idler-side heralding filter. ModeProjection projects onto the normalized upper
// idler peak M_i^+; TopHat is a flat window. A TopHat with non-positive width
// or NaN centre falls back to the upper idler bin with width delta_i / 2.
struct HeraldFilter {
    enum class Kind { ModeProjection, TopHat };

    Kind kind = Kind::ModeProjection;
    double center = std::numeric_limits<double>::quiet_NaN();
    double width = 0.0;

    static HeraldFilter mode_projection() { return {}; }
    static HeraldFilter top_hat(double center, double width) { return {Kind::TopHat, center, width}; }
    // Default TopHat on the upper idler bin, width delta_i * width_over_delta.
    static HeraldFilter upper_bin_top_hat(const MoleculeParams& params, double width_over_delta = 0.5);
};

// Filter samples on `grid`, unit norm under the grid measure.
Eigen::VectorXcd filter_samples(const HeraldFilter& filter, const MoleculeParams& params,
                                const FrequencyGrid& grid);

// Heralded signal spectral amplitude, unit norm under the grid measure.
struct SignalState {
    FrequencyGrid grid;
    Eigen::VectorXcd amplitude;
    double herald_weight = 0.0;  // squared norm before normalization, relative units
};

inline constexpr double kZeroHeraldNorm = 1e-15;

// psi_s(w_s) = sum_i conj(filter(w_i)) F(w_i, w_s) step_i, then normalized.
// Throws ZeroHerald when the filter misses the JSA support.
SignalState herald(const Jsa& jsa, const MoleculeParams& params, const HeraldFilter& filter);

// Frequency-bin qubit carried by the heralded signal photon. |a> is the lower
// signal bin (M_s^-), |b> the upper one (M_s^+).
//   theta = arctan(|amp_a| / |amp_b|) in [0, pi/2]
//   phi   = arg(amp_a) - arg(amp_b) in (-pi, pi]
// so the state A e^{-i phi_a}|a> + B e^{-i phi_b}|b> has phi = phi_b - phi_a.
struct QubitState {
    std::complex<double> amp_a;
    std::complex<double> amp_b;
    double theta = 0.0;
    double phi = 0.0;
    double leakage = 0.0;      // 1 - |amp_a|^2 - |amp_b|^2
    double bin_overlap = 0.0;  // |<M_s^-|M_s^+>| of the normalized bin modes
};

inline constexpr double kDefaultMaxBinOverlap = 0.05;

// Projects onto the two bin modes after symmetric (Loewdin) orthonormalization, so
// |amp_a|^2 + |amp_b|^2 + leakage = 1 holds for a normalized state.
// Throws NonOrthogonalBins when the raw bin overlap exceeds `max_overlap`.
QubitState extract_bins(const SignalState& state, const MoleculeParams& params,
                        double max_overlap = kDefaultMaxBinOverlap);

// Bin amplitudes for an arbitrary signal amplitude on `grid` (must be normalized).
QubitState extract_bins(const FrequencyGrid& grid, const Eigen::VectorXcd& amplitude,
                        const MoleculeParams& params, double max_overlap = kDefaultMaxBinOverlap);

// Normalized partial-fraction bin modes of the signal field on `grid` (columns: minus, plus).
Eigen::MatrixXcd signal_bin_modes(const MoleculeParams& params, const FrequencyGrid& grid);

struct BlochTarget {
    double theta = 0.0;
    double phi = 0.0;
};

// Target programmed by a two-component pump: theta = arctan(A/B), phi = phi_b - phi_a.
BlochTarget programmed_target(double a, double b, double phi_a, double phi_b);

// Squared overlap of the normalized bin 2-vector with the target, times (1 - leakage).
double fidelity(const QubitState& state, const BlochTarget& target);

// Maps an angle onto (-pi, pi].
double wrap_phase(double angle) noexcept;

}  // namespace pmsim
