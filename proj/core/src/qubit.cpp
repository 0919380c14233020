#include "pmsim/qubit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "pmsim/error.hpp"
#include "pmsim/transfer.hpp"

namespace pmsim {

using cdouble = std::complex<double>;

HeraldFilter HeraldFilter::upper_bin_top_hat(const MoleculeParams& params, double width_over_delta) {
    const PeakPair idler = peak_decomposition(params, FieldLabel::Idler);
    return top_hat(idler.center_plus(), width_over_delta * idler.delta);
}

namespace {

double grid_norm(const Eigen::VectorXcd& v, double step) { return v.norm() * std::sqrt(step); }

Eigen::VectorXcd sample(const FrequencyGrid& grid, auto&& fn) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(grid.count));
    for (std::size_t k = 0; k < grid.count; ++k) out[static_cast<Eigen::Index>(k)] = fn(grid[k]);
    return out;
}

}  // namespace

Eigen::VectorXcd filter_samples(const HeraldFilter& filter, const MoleculeParams& params,
                                const FrequencyGrid& grid) {
    Eigen::VectorXcd samples;
    if (filter.kind == HeraldFilter::Kind::ModeProjection) {
        const PeakPair idler = peak_decomposition(params, FieldLabel::Idler);
        samples = sample(grid, [&](double w) { return idler.plus(w); });
    } else {
        HeraldFilter window = filter;
        if (!(window.width > 0.0) || std::isnan(window.center)) {
            window = HeraldFilter::upper_bin_top_hat(params);
        }
        samples = sample(grid, [&](double w) {
            return std::abs(w - window.center) <= 0.5 * window.width ? cdouble{1.0} : cdouble{0.0};
        });
    }
    const double norm = grid_norm(samples, grid.step);
    if (!(norm > 0.0)) {
        throw Error(ErrorCode::ZeroHerald, "herald filter has no support on the idler grid");
    }
    return samples / norm;
}

SignalState herald(const Jsa& jsa, const MoleculeParams& params, const HeraldFilter& filter) {
    const Eigen::VectorXcd weights = filter_samples(filter, params, jsa.idler);
    Eigen::VectorXcd amplitude = jsa.values.transpose() * weights.conjugate() * jsa.idler.step;
    const double norm = grid_norm(amplitude, jsa.signal.step);
    if (!(norm >= kZeroHeraldNorm)) {
        std::ostringstream msg;
        msg << "heralded signal norm " << norm << " is below " << kZeroHeraldNorm;
        throw Error(ErrorCode::ZeroHerald, msg.str());
    }
    return {jsa.signal, amplitude / norm, norm * norm};
}

Eigen::MatrixXcd signal_bin_modes(const MoleculeParams& params, const FrequencyGrid& grid) {
    const PeakPair signal = peak_decomposition(params, FieldLabel::Signal);
    Eigen::MatrixXcd modes(static_cast<Eigen::Index>(grid.count), 2);
    modes.col(0) = sample(grid, [&](double w) { return signal.minus(w); });
    modes.col(1) = sample(grid, [&](double w) { return signal.plus(w); });
    for (Eigen::Index c = 0; c < 2; ++c) modes.col(c) /= grid_norm(modes.col(c), grid.step);
    return modes;
}

QubitState extract_bins(const FrequencyGrid& grid, const Eigen::VectorXcd& amplitude,
                        const MoleculeParams& params, double max_overlap) {
    const Eigen::MatrixXcd bins = signal_bin_modes(params, grid);
    const Eigen::Matrix2cd gram = bins.adjoint() * bins * grid.step;

    QubitState state;
    state.bin_overlap = std::abs(gram(0, 1));
    if (state.bin_overlap > max_overlap) {
        std::ostringstream msg;
        msg << "bin modes overlap by " << state.bin_overlap << " (limit " << max_overlap << ")";
        throw Error(ErrorCode::NonOrthogonalBins, msg.str());
    }

    // Loewdin: E = B S^{-1/2} is the orthonormal pair closest to the raw bins.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(gram);
    const Eigen::Vector2d inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
    const Eigen::Matrix2cd s_inv_half =
        eig.eigenvectors() * inv_sqrt.cast<cdouble>().asDiagonal() * eig.eigenvectors().adjoint();
    const Eigen::MatrixXcd orthonormal = bins * s_inv_half;

    const Eigen::Vector2cd amps = orthonormal.adjoint() * amplitude * grid.step;
    state.amp_a = amps[0];
    state.amp_b = amps[1];
    state.theta = std::atan2(std::abs(state.amp_a), std::abs(state.amp_b));
    state.phi = wrap_phase(std::arg(state.amp_a) - std::arg(state.amp_b));
    const double total = amplitude.squaredNorm() * grid.step;
    state.leakage = total - std::norm(state.amp_a) - std::norm(state.amp_b);
    return state;
}

QubitState extract_bins(const SignalState& state, const MoleculeParams& params, double max_overlap) {
    return extract_bins(state.grid, state.amplitude, params, max_overlap);
}

BlochTarget programmed_target(double a, double b, double phi_a, double phi_b) {
    return {std::atan2(a, b), wrap_phase(phi_b - phi_a)};
}

double fidelity(const QubitState& state, const BlochTarget& target) {
    const Eigen::Vector2cd v{state.amp_a, state.amp_b};
    const double norm = v.norm();
    if (!(norm > 0.0)) return 0.0;
    const Eigen::Vector2cd t{std::polar(std::sin(target.theta), target.phi),
                             cdouble{std::cos(target.theta)}};
    const double overlap = std::norm(t.dot(v) / norm);
    return std::clamp(overlap * (1.0 - state.leakage), 0.0, 1.0);
}

double wrap_phase(double angle) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::remainder(angle, two_pi);
    if (wrapped <= -std::numbers::pi) wrapped += two_pi;
    return wrapped;
}

}  // namespace pmsim
