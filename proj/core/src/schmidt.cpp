#include "pmsim/schmidt.hpp"

#include <cmath>
#include <complex>

#include <Eigen/SVD>

#include "pmsim/error.hpp"

namespace pmsim {

namespace {

void fix_phases(Eigen::MatrixXcd& idler_modes, Eigen::MatrixXcd& signal_modes) {
    for (Eigen::Index n = 0; n < idler_modes.cols(); ++n) {
        Eigen::Index peak = 0;
        idler_modes.col(n).cwiseAbs().maxCoeff(&peak);
        const std::complex<double> value = idler_modes(peak, n);
        const std::complex<double> rotation = std::conj(value) / std::abs(value);
        idler_modes.col(n) *= rotation;
        signal_modes.col(n) *= std::conj(rotation);
    }
}

}  // namespace

SchmidtResult decompose(const Jsa& jsa, const DecomposeOptions& options) {
    const double weight = std::sqrt(jsa.cell_area());
    const Eigen::MatrixXcd weighted = jsa.values * weight;

    const unsigned flags =
        options.compute_modes ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(weighted, flags);
    if (svd.info() != Eigen::Success) {
        throw Error(ErrorCode::SvdFailure, "singular value decomposition did not converge");
    }
    const Eigen::VectorXd& singular = svd.singularValues();
    if (!singular.allFinite()) {
        throw Error(ErrorCode::SvdFailure, "singular values are not finite");
    }

    const Eigen::VectorXd squares = singular.cwiseAbs2();
    const double total = squares.sum();
    if (!(total > 0.0)) throw Error(ErrorCode::SvdFailure, "JSA has no nonzero singular value");

    Eigen::Index kept = 0;
    while (kept < squares.size() && squares[kept] / total >= kLambdaCutoff) ++kept;

    SchmidtResult result;
    result.idler_step = jsa.idler.step;
    result.signal_step = jsa.signal.step;
    result.lambdas = squares.head(kept) / squares.head(kept).sum();
    result.schmidt_number = 1.0 / result.lambdas.squaredNorm();
    result.purity = 1.0 / result.schmidt_number;

    if (options.compute_modes) {
        // F = sum_n s_n u_n v_n^H / sqrt(step_i step_s)
        result.idler_modes = svd.matrixU().leftCols(kept) / std::sqrt(jsa.idler.step);
        result.signal_modes = svd.matrixV().leftCols(kept).conjugate() / std::sqrt(jsa.signal.step);
        fix_phases(result.idler_modes, result.signal_modes);
    }
    return result;
}

double schmidt_number(const Jsa& jsa) {
    return decompose(jsa, DecomposeOptions{.compute_modes = false}).schmidt_number;
}

Eigen::MatrixXcd reconstruct(const SchmidtResult& result, std::size_t n_terms) {
    const auto terms = static_cast<Eigen::Index>(std::min(n_terms, result.size()));
    const Eigen::VectorXcd weights = result.lambdas.head(terms).cwiseSqrt().cast<std::complex<double>>();
    return result.idler_modes.leftCols(terms) * weights.asDiagonal() *
           result.signal_modes.leftCols(terms).transpose();
}

}  // namespace pmsim
