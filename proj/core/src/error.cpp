#include "pmsim/error.hpp"

namespace pmsim {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NegativeRate: return "NegativeRate";
        case ErrorCode::OvercoupledForSplitting: return "OvercoupledForSplitting";
        case ErrorCode::EnergyMismatch: return "EnergyMismatch";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::InvalidPump: return "InvalidPump";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::DegeneratePoles: return "DegeneratePoles";
        case ErrorCode::QuadratureWindowTooNarrow: return "QuadratureWindowTooNarrow";
        case ErrorCode::ZeroField: return "ZeroField";
        case ErrorCode::SvdFailure: return "SvdFailure";
        case ErrorCode::ZeroHerald: return "ZeroHerald";
        case ErrorCode::NonOrthogonalBins: return "NonOrthogonalBins";
    }
    return "Unknown";
}

bool is_config_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NegativeRate:
        case ErrorCode::OvercoupledForSplitting:
        case ErrorCode::EnergyMismatch:
        case ErrorCode::InvalidConfig:
        case ErrorCode::InvalidGrid:
        case ErrorCode::InvalidPump:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace pmsim
