#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "pmsim/jsa.hpp"

namespace pmsim {

// Schmidt decomposition F(w_i, w_s) = sum_n sqrt(lambda_n) psi_n(w_i) phi_n(w_s).
// Modes are orthonormal under the grid measure (sum |psi_n|^2 step = 1) and
// phase-fixed so each psi_n is real and positive at its largest-magnitude sample.
struct SchmidtResult {
    Eigen::VectorXd lambdas;        // descending, sum to 1
    Eigen::MatrixXcd idler_modes;   // column n is psi_n
    Eigen::MatrixXcd signal_modes;  // column n is phi_n
    double idler_step = 0.0;
    double signal_step = 0.0;
    double schmidt_number = 1.0;    // K = 1 / sum lambda_n^2
    double purity = 1.0;            // P = 1 / K

    std::size_t size() const noexcept { return static_cast<std::size_t>(lambdas.size()); }
};

inline constexpr double kLambdaCutoff = 1e-14;

struct DecomposeOptions {
    bool compute_modes = true;
};

// Throws SvdFailure if the SVD does not converge or produces non-finite values.
SchmidtResult decompose(const Jsa& jsa, const DecomposeOptions& options = {});

// K only; skips the singular vectors.
double schmidt_number(const Jsa& jsa);

// Partial sum over the leading `n_terms` Schmidt modes (needs modes).
Eigen::MatrixXcd reconstruct(const SchmidtResult& result, std::size_t n_terms);

}  // namespace pmsim
