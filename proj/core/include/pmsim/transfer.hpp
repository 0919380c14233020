#pragma once

#include <complex>

#include "pmsim/params.hpp"

namespace pmsim {

using cdouble = std::complex<double>;

// Transfer function M(w) from the waveguide input of one field to the central-ring
// field, written in terms of the detuning d = omega0 - w:
//
//   M = 4 g sqrt(kappa) / (-4 d^2 + 4 g^2 + 2 i d (kappa + gamma_outer + gamma_central)
//                          + (kappa + gamma_outer) gamma_central)
//
// gamma_outer is the loss of the ring the field loads through (x for the pump,
// z for signal/idler), gamma_central the loss of the central ring.
struct ModeResponse {
    double g = 1.0;
    double kappa = 0.0;
    double gamma_outer = 0.0;
    double gamma_central = 0.0;
    double omega0 = 0.0;

    cdouble operator()(double omega) const noexcept;

    // Coefficients of the denominator -4 d^2 + 2 i c d + e.
    double damping() const noexcept { return kappa + gamma_outer + gamma_central; }
    double constant_term() const noexcept {
        return 4.0 * g * g + (kappa + gamma_outer) * gamma_central;
    }
    // Intensity linewidth estimate (kappa + gamma_central + gamma_outer) / 2.
    double linewidth() const noexcept { return 0.5 * damping(); }
};

ModeResponse mode_response(const MoleculeParams& params, FieldLabel label);

cdouble eval_pump(const MoleculeParams& params, double omega);
// `label` must be Signal or Idler.
cdouble eval_signal_idler(const MoleculeParams& params, FieldLabel label, double omega);

// Separation of the two intensity maxima, 2 sqrt(g^2 - kappa^2 / 8).
// Throws OvercoupledForSplitting unless kappa < sqrt(8) g (kappa == sqrt(8) g returns 0).
double splitting(double g, double kappa);
double splitting(const MoleculeParams& params, FieldLabel label);

// Partial-fraction split of M into the two single-pole terms. The term whose
// pole sits below omega0 in frequency is `minus`. Pole real parts lie at
// +-sqrt(g^2 - kappa^2 / 16) for a lossless mode, slightly outside the
// intensity maxima at +-delta/2.
struct PeakPair {
    double omega0 = 0.0;
    double delta = 0.0;
    cdouble pole_minus;  // in detuning units, d = omega0 - w
    cdouble pole_plus;
    cdouble residue_minus;
    cdouble residue_plus;

    cdouble minus(double omega) const noexcept;
    cdouble plus(double omega) const noexcept;

    double center_minus() const noexcept { return omega0 - 0.5 * delta; }
    double center_plus() const noexcept { return omega0 + 0.5 * delta; }
    // Frequencies of the pole real parts.
    double pole_frequency_minus() const noexcept { return omega0 - pole_minus.real(); }
    double pole_frequency_plus() const noexcept { return omega0 - pole_plus.real(); }
};

inline constexpr double kDegeneratePoleTolerance = 1e-10;

PeakPair peak_decomposition(const ModeResponse& mode);
PeakPair peak_decomposition(const MoleculeParams& params, FieldLabel label);

}  // namespace pmsim
