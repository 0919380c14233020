#pragma once

#include <optional>

#include "pmsim/config.hpp"
#include "pmsim/grid.hpp"
#include "pmsim/jsa.hpp"
#include "pmsim/params.hpp"
#include "pmsim/pump.hpp"
#include "pmsim/qubit.hpp"

namespace pmsim {

// Fully resolved numerical scenario: everything the pipeline needs, in normalized units.
struct Scenario {
    MoleculeParams params;
    ValidationMode mode = ValidationMode::BinSplitting;
    PumpSpec pump;
    std::optional<BlochTarget> target;  // set for a two-component qubit pump
    FrequencyGrid idler_grid;
    FrequencyGrid signal_grid;
    QuadratureOptions quadrature;
    HeraldFilter herald;
    bool single_bin_schmidt = true;     // K on the heralding-bin window instead of the full JSA
    double bin_window_over_delta = 0.5;
    double max_bin_overlap = kDefaultMaxBinOverlap;
};

// Pump frequencies that feed the JSA peak groups: 2 omega_{++} = omega_0i^+ + omega_0s^+
// and 2 omega_{+-} = omega_0i^+ + omega_0s^-.
struct PumpCenters {
    double cross = 0.0;  // omega_{+-}
    double upper = 0.0;  // omega_{++}
    double lower = 0.0;  // omega_{--}
};
PumpCenters pump_centers(const MoleculeParams& params);

MoleculeParams resolve_molecule(const MoleculeConfig& config);
Scenario resolve(const Config& config);

// JSA of the scenario (validates params for the scenario's mode first).
Jsa build_jsa(const Scenario& scenario);

// JSA restricted to the square window of full width `window_over_delta * delta` per axis
// centred on the upper bins (omega_0i + delta_i/2, omega_0s + delta_s/2).
Jsa upper_bin_window(const Jsa& jsa, const MoleculeParams& params, double window_over_delta);

struct PointMetrics {
    double schmidt_number = 0.0;
    double purity = 0.0;
    double jsa_norm = 0.0;
    std::optional<QubitState> qubit;
    std::optional<double> fidelity;
    std::optional<double> herald_weight;
};

PointMetrics evaluate(const Scenario& scenario);

// Synthetic JSAs with known Schmidt spectra: separable Gaussians (K = 1) or the
// balanced superposition of the first two Hermite-Gauss products (K = 2).
Jsa make_fixture(const FixtureConfig& fixture);

}  // namespace pmsim
