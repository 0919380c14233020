#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmsim {

enum class ErrorCode {
    NegativeRate,
    OvercoupledForSplitting,
    EnergyMismatch,
    InvalidConfig,
    InvalidGrid,
    InvalidPump,
    GridTooCoarse,
    DegeneratePoles,
    QuadratureWindowTooNarrow,
    ZeroField,
    SvdFailure,
    ZeroHerald,
    NonOrthogonalBins,
};

std::string_view to_string(ErrorCode code) noexcept;

// Configuration problems map to CLI exit code 1, everything else is numerical (exit code 2).
bool is_config_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pmsim
