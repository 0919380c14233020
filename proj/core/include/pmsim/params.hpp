#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace pmsim {

// Field labels of the photonic molecule. Signal and idler are the generated
// fields; all three live in the central ring.
enum class FieldLabel { Pump, Signal, Idler };

inline constexpr std::array<FieldLabel, 3> kAllFields{FieldLabel::Pump, FieldLabel::Signal,
                                                      FieldLabel::Idler};
inline constexpr std::array<FieldLabel, 2> kGeneratedFields{FieldLabel::Signal, FieldLabel::Idler};

constexpr bool is_generated(FieldLabel label) noexcept { return label != FieldLabel::Pump; }

std::string_view to_string(FieldLabel label) noexcept;

// One value per field label.
template <typename T>
struct PerField {
    T pump{};
    T signal{};
    T idler{};

    constexpr T& operator[](FieldLabel label) noexcept {
        switch (label) {
            case FieldLabel::Pump: return pump;
            case FieldLabel::Signal: return signal;
            case FieldLabel::Idler: return idler;
        }
        return pump;
    }
    constexpr const T& operator[](FieldLabel label) const noexcept {
        return const_cast<PerField&>(*this)[label];
    }
    friend constexpr bool operator==(const PerField&, const PerField&) = default;
};

// Physical parameters of the four-ring molecule in normalized units (rates and
// frequency offsets as multiples of g_signal, hbar = zeta = 1).
//
// The pump couples to the waveguide through the left outer ring (x), the
// generated fields through the right outer rings (z); the central ring (y)
// hosts all three modes.
struct MoleculeParams {
    PerField<double> g{1.0, 1.0, 1.0};        // ring-ring coupling
    PerField<double> kappa{0.1, 0.1, 0.1};    // ring-waveguide coupling
    double gamma_x_pump = 0.0;                // loss, left outer ring
    PerField<double> gamma_y{};               // loss, central ring
    PerField<double> gamma_z{};               // loss, right outer rings (pump entry unused)
    PerField<double> omega0{};                // mode centre offsets

    friend bool operator==(const MoleculeParams&, const MoleculeParams&) = default;
};

enum class ValidationMode { TransferOnly, BinSplitting, QubitGeneration };

inline constexpr double kDefaultEnergyTolerance = 1e-9;

// Returns `raw` unchanged when every invariant for `mode` holds, throws pmsim::Error otherwise.
// BinSplitting requires kappa < sqrt(8) g for signal and idler; QubitGeneration additionally
// requires 2 omega0_pump = omega0_signal + omega0_idler within `energy_tolerance`.
MoleculeParams validate(const MoleculeParams& raw, ValidationMode mode,
                        double energy_tolerance = kDefaultEnergyTolerance);

// Ring-waveguide coupling above which the two hybridized peaks merge.
double max_splitting_kappa(double g) noexcept;

}  // namespace pmsim
