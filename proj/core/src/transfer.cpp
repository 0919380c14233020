#include "pmsim/transfer.hpp"

#include <cmath>
#include <sstream>

#include "pmsim/error.hpp"

namespace pmsim {

cdouble ModeResponse::operator()(double omega) const noexcept {
    if (kappa == 0.0) return {};
    const double d = omega0 - omega;
    const cdouble denominator{-4.0 * d * d + constant_term(), 2.0 * d * damping()};
    return 4.0 * g * std::sqrt(kappa) / denominator;
}

ModeResponse mode_response(const MoleculeParams& params, FieldLabel label) {
    ModeResponse mode;
    mode.g = params.g[label];
    mode.kappa = params.kappa[label];
    mode.gamma_central = params.gamma_y[label];
    mode.gamma_outer = label == FieldLabel::Pump ? params.gamma_x_pump : params.gamma_z[label];
    mode.omega0 = params.omega0[label];
    return mode;
}

cdouble eval_pump(const MoleculeParams& params, double omega) {
    return mode_response(params, FieldLabel::Pump)(omega);
}

cdouble eval_signal_idler(const MoleculeParams& params, FieldLabel label, double omega) {
    if (!is_generated(label)) {
        throw Error(ErrorCode::InvalidConfig, "eval_signal_idler needs the signal or idler label");
    }
    return mode_response(params, label)(omega);
}

double splitting(double g, double kappa) {
    const double limit = max_splitting_kappa(g);
    if (kappa > limit) {
        std::ostringstream msg;
        msg << "kappa = " << kappa << " exceeds sqrt(8) g = " << limit;
        throw Error(ErrorCode::OvercoupledForSplitting, msg.str());
    }
    return 2.0 * std::sqrt(std::max(0.0, g * g - kappa * kappa / 8.0));
}

double splitting(const MoleculeParams& params, FieldLabel label) {
    return splitting(params.g[label], params.kappa[label]);
}

cdouble PeakPair::minus(double omega) const noexcept {
    return residue_minus / ((omega0 - omega) - pole_minus);
}

cdouble PeakPair::plus(double omega) const noexcept {
    return residue_plus / ((omega0 - omega) - pole_plus);
}

PeakPair peak_decomposition(const ModeResponse& mode) {
    PeakPair pair;
    pair.omega0 = mode.omega0;
    pair.delta = splitting(mode.g, mode.kappa);

    // -4 d^2 + 2 i c d + e = 0  =>  d = (i c +- sqrt(4 e - c^2)) / 4
    const double c = mode.damping();
    const cdouble root = std::sqrt(cdouble{4.0 * mode.constant_term() - c * c, 0.0});
    const cdouble r1 = (cdouble{0.0, c} + root) / 4.0;
    const cdouble r2 = (cdouble{0.0, c} - root) / 4.0;
    if (std::abs(r1 - r2) < kDegeneratePoleTolerance) {
        throw Error(ErrorCode::DegeneratePoles, "transfer-function poles coincide");
    }

    // M = N / (-4 (d - r1)(d - r2)) = R / (d - r1) - R / (d - r2)
    const double numerator = 4.0 * mode.g * std::sqrt(mode.kappa);
    const cdouble residue = -numerator / (4.0 * (r1 - r2));

    // Positive real detuning d means a frequency below omega0.
    if (r1.real() >= r2.real()) {
        pair.pole_minus = r1;
        pair.residue_minus = residue;
        pair.pole_plus = r2;
        pair.residue_plus = -residue;
    } else {
        pair.pole_minus = r2;
        pair.residue_minus = -residue;
        pair.pole_plus = r1;
        pair.residue_plus = residue;
    }
    return pair;
}

PeakPair peak_decomposition(const MoleculeParams& params, FieldLabel label) {
    const ModeResponse mode = mode_response(params, label);
    if (!(mode.kappa < max_splitting_kappa(mode.g))) {
        throw Error(ErrorCode::OvercoupledForSplitting,
                    "peak decomposition needs kappa < sqrt(8) g for " + std::string(to_string(label)));
    }
    return peak_decomposition(mode);
}

}  // namespace pmsim
