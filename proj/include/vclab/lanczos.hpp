#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "vclab/common.hpp"

namespace vclab {

// Thick-restart Lanczos for the largest eigenvalues of a symmetric
// operator given only as a matvec. Full reorthogonalization (two-pass),
// restart keeps a thick band of Ritz vectors plus the residual
// direction; the projected matrix is carried explicitly so the
// arrowhead block after a restart needs no special bookkeeping.
struct LanczosOptions {
    int k = 6;
    int ncv = 0; // subspace size; 0 = auto from k
    int max_restarts = 80;
    std::uint64_t seed = 0x5eed5eedULL;
};

struct LanczosResult {
    std::vector<double> theta; // k largest Ritz values, descending
    Eigen::MatrixXd vectors;   // dim x k, orthonormal
    int restarts = 0;
    bool converged = false;
};

// `accept` is called after each Rayleigh-Ritz step with the current top-k
// pairs; it owns the stopping rule (typically: true residuals of the
// original problem under the tolerance). Returning true stops the
// iteration. Throws convergence_error when max_restarts is exhausted.
LanczosResult lanczos_largest(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op,
    Eigen::Index dim,
    const std::function<bool(const std::vector<double>& theta,
                             const Eigen::MatrixXd& vectors)>& accept,
    LanczosOptions opt, const Eigen::VectorXd* start = nullptr);

} // namespace vclab
