#pragma once

#include <Eigen/Dense>

#include "pmsim/grid.hpp"
#include "pmsim/params.hpp"
#include "pmsim/pump.hpp"

namespace pmsim {

// Discretized joint spectral amplitude F(w_i, w_s): rows follow the idler axis,
// columns the signal axis. Values carry unit L2 norm under the grid measure,
//   sum |F|^2 step_i step_s = 1,
// and `norm` keeps the norm before normalization.
struct Jsa {
    FrequencyGrid idler;
    FrequencyGrid signal;
    Eigen::MatrixXcd values;
    double norm = 0.0;

    double cell_area() const noexcept { return idler.step * signal.step; }
};

inline constexpr double kZeroFieldNorm = 1e-30;

// Normalizes `samples` on the given grids. Throws ZeroField when the norm is below kZeroFieldNorm.
Jsa make_jsa(const FrequencyGrid& idler, const FrequencyGrid& signal, Eigen::MatrixXcd samples);

// Throws GridTooCoarse unless step <= linewidth / 8 for the narrower generated mode.
void check_resolution(const FrequencyGrid& grid, const MoleculeParams& params);

// F = I_p(w_i + w_s) M_i(w_i) M_s(w_s), normalized.
Jsa assemble_jsa(const PumpConvolution& pump, const ResponseFn& idler_response,
                 const ResponseFn& signal_response);

Jsa build_jsa(const MoleculeParams& params, const PumpSpec& spec, const FrequencyGrid& idler,
              const FrequencyGrid& signal, const QuadratureOptions& quadrature = {});

// |F|^2 elementwise.
Eigen::MatrixXd jsi(const Jsa& jsa);

// Sub-block covering [idler_lo, idler_hi] x [signal_lo, signal_hi], renormalized.
Jsa restrict(const Jsa& jsa, double idler_lo, double idler_hi, double signal_lo, double signal_hi);

}  // namespace pmsim
