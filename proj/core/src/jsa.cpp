#include "pmsim/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pmsim/error.hpp"
#include "pmsim/transfer.hpp"

namespace pmsim {

Jsa make_jsa(const FrequencyGrid& idler, const FrequencyGrid& signal, Eigen::MatrixXcd samples) {
    if (static_cast<std::size_t>(samples.rows()) != idler.count ||
        static_cast<std::size_t>(samples.cols()) != signal.count) {
        throw Error(ErrorCode::InvalidGrid, "JSA samples do not match the grid sizes");
    }
    Jsa jsa{idler, signal, std::move(samples), 0.0};
    jsa.norm = jsa.values.norm() * std::sqrt(jsa.cell_area());
    if (!(jsa.norm >= kZeroFieldNorm) || !std::isfinite(jsa.norm)) {
        std::ostringstream msg;
        msg << "JSA norm " << jsa.norm << " is below " << kZeroFieldNorm;
        throw Error(ErrorCode::ZeroField, msg.str());
    }
    jsa.values /= jsa.norm;
    return jsa;
}

void check_resolution(const FrequencyGrid& grid, const MoleculeParams& params) {
    double narrowest = std::numeric_limits<double>::infinity();
    for (FieldLabel label : kGeneratedFields) {
        narrowest = std::min(narrowest, mode_response(params, label).linewidth());
    }
    if (!(grid.step <= narrowest / 8.0)) {
        std::ostringstream msg;
        msg << "grid step " << grid.step << " exceeds linewidth/8 = " << narrowest / 8.0;
        throw Error(ErrorCode::GridTooCoarse, msg.str());
    }
}

Jsa assemble_jsa(const PumpConvolution& pump, const ResponseFn& idler_response,
                 const ResponseFn& signal_response) {
    const auto rows = static_cast<Eigen::Index>(pump.idler.count);
    const auto cols = static_cast<Eigen::Index>(pump.signal.count);
    Eigen::VectorXcd idler_factor(rows);
    Eigen::VectorXcd signal_factor(cols);
    for (Eigen::Index i = 0; i < rows; ++i) idler_factor[i] = idler_response(pump.idler[i]);
    for (Eigen::Index j = 0; j < cols; ++j) signal_factor[j] = signal_response(pump.signal[j]);

    Eigen::MatrixXcd samples(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            samples(i, j) = pump.at(i, j) * idler_factor[i] * signal_factor[j];
        }
    }
    return make_jsa(pump.idler, pump.signal, std::move(samples));
}

Jsa build_jsa(const MoleculeParams& params, const PumpSpec& spec, const FrequencyGrid& idler,
              const FrequencyGrid& signal, const QuadratureOptions& quadrature) {
    idler.validate();
    signal.validate();
    check_resolution(idler, params);
    check_resolution(signal, params);
    const PumpConvolution pump = convolve(spec, params, idler, signal, quadrature);
    return assemble_jsa(pump, ResponseFn{mode_response(params, FieldLabel::Idler)},
                        ResponseFn{mode_response(params, FieldLabel::Signal)});
}

Eigen::MatrixXd jsi(const Jsa& jsa) { return jsa.values.cwiseAbs2(); }

namespace {

struct IndexRange {
    std::size_t first = 0;
    std::size_t count = 0;
};

IndexRange clip(const FrequencyGrid& grid, double lo, double hi) {
    IndexRange range;
    bool found = false;
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double w = grid[k];
        if (w < lo || w > hi) continue;
        if (!found) {
            range.first = k;
            found = true;
        }
        ++range.count;
    }
    return range;
}

}  // namespace

Jsa restrict(const Jsa& jsa, double idler_lo, double idler_hi, double signal_lo,
             double signal_hi) {
    const IndexRange rows = clip(jsa.idler, idler_lo, idler_hi);
    const IndexRange cols = clip(jsa.signal, signal_lo, signal_hi);
    if (rows.count < 2 || cols.count < 2) {
        throw Error(ErrorCode::InvalidGrid, "restriction window holds fewer than two samples");
    }
    const FrequencyGrid idler{jsa.idler[rows.first], jsa.idler.step, rows.count};
    const FrequencyGrid signal{jsa.signal[cols.first], jsa.signal.step, cols.count};
    Eigen::MatrixXcd block = jsa.values.block(static_cast<Eigen::Index>(rows.first),
                                              static_cast<Eigen::Index>(cols.first),
                                              static_cast<Eigen::Index>(rows.count),
                                              static_cast<Eigen::Index>(cols.count));
    return make_jsa(idler, signal, std::move(block));
}

}  // namespace pmsim
