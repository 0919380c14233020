#include "pmsim/params.hpp"

#include <cmath>
#include <sstream>

#include "pmsim/error.hpp"

namespace pmsim {

std::string_view to_string(FieldLabel label) noexcept {
    switch (label) {
        case FieldLabel::Pump: return "pump";
        case FieldLabel::Signal: return "signal";
        case FieldLabel::Idler: return "idler";
    }
    return "unknown";
}

double max_splitting_kappa(double g) noexcept { return std::sqrt(8.0) * g; }

namespace {

void require_rate(double value, std::string_view name, FieldLabel label) {
    if (!std::isfinite(value) || value < 0.0) {
        std::ostringstream msg;
        msg << name << "[" << to_string(label) << "] = " << value << " must be finite and >= 0";
        throw Error(ErrorCode::NegativeRate, msg.str());
    }
}

}  // namespace

MoleculeParams validate(const MoleculeParams& raw, ValidationMode mode, double energy_tolerance) {
    for (FieldLabel label : kAllFields) {
        require_rate(raw.g[label], "g", label);
        require_rate(raw.kappa[label], "kappa", label);
        require_rate(raw.gamma_y[label], "gamma_y", label);
        if (!std::isfinite(raw.omega0[label])) {
            throw Error(ErrorCode::InvalidConfig, "omega0 must be finite");
        }
    }
    for (FieldLabel label : kGeneratedFields) require_rate(raw.gamma_z[label], "gamma_z", label);
    require_rate(raw.gamma_x_pump, "gamma_x", FieldLabel::Pump);
    if (!(raw.g.signal > 0.0)) {
        throw Error(ErrorCode::NegativeRate, "g[signal] is the rate unit and must be > 0");
    }

    if (mode == ValidationMode::TransferOnly) return raw;

    for (FieldLabel label : kGeneratedFields) {
        if (!(raw.kappa[label] < max_splitting_kappa(raw.g[label]))) {
            std::ostringstream msg;
            msg << "kappa[" << to_string(label) << "] = " << raw.kappa[label]
                << " is not below sqrt(8) g = " << max_splitting_kappa(raw.g[label]);
            throw Error(ErrorCode::OvercoupledForSplitting, msg.str());
        }
    }

    if (mode == ValidationMode::QubitGeneration) {
        const double mismatch = 2.0 * raw.omega0.pump - raw.omega0.signal - raw.omega0.idler;
        if (!(std::abs(mismatch) <= energy_tolerance)) {
            std::ostringstream msg;
            msg << "2 omega0_pump - omega0_signal - omega0_idler = " << mismatch;
            throw Error(ErrorCode::EnergyMismatch, msg.str());
        }
    }
    return raw;
}

}  // namespace pmsim
