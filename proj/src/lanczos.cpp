#include "vclab/lanczos.hpp"

#include <cmath>
#include <random>

namespace vclab {

namespace {

Eigen::VectorXd random_unit(Eigen::Index dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = u(rng);
    v.normalize();
    return v;
}

} // namespace

LanczosResult lanczos_largest(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op,
    Eigen::Index dim,
    const std::function<bool(const std::vector<double>& theta,
                             const Eigen::MatrixXd& vectors)>& accept,
    LanczosOptions opt, const Eigen::VectorXd* start) {
    require(opt.k >= 1, "lanczos: need k >= 1");
    require(dim >= 2 * opt.k, "lanczos: operator too small for requested k");
    int ncv = opt.ncv > 0 ? opt.ncv : std::max(2 * opt.k + 16, 48);
    ncv = std::min<Eigen::Index>(ncv, dim - 1);
    require(ncv > opt.k + 2, "lanczos: subspace must exceed k by a margin");

    std::mt19937_64 rng(opt.seed);
    Eigen::MatrixXd V(dim, ncv + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ncv + 1, ncv + 1);

    if (start && start->size() == dim && start->norm() > 0)
        V.col(0) = start->normalized();
    else
        V.col(0) = random_unit(dim, rng);

    int nkeep = std::min(opt.k + 12, ncv - 2);
    int j = 1; // columns currently in the basis

    LanczosResult out;
    for (int cycle = 0; cycle < opt.max_restarts; ++cycle) {
        // Expand the basis to ncv columns.
        for (; j < ncv; ++j) {
            Eigen::VectorXd w = op(V.col(j - 1));
            // Two-pass full reorthogonalization; accumulate the true
            // projection coefficients into the explicit projected matrix.
            Eigen::VectorXd h = V.leftCols(j).transpose() * w;
            w.noalias() -= V.leftCols(j) * h;
            Eigen::VectorXd h2 = V.leftCols(j).transpose() * w;
            w.noalias() -= V.leftCols(j) * h2;
            h += h2;
            H.block(0, j - 1, j, 1) = h;
            H.block(j - 1, 0, 1, j) = h.transpose();
            double beta = w.norm();
            if (beta < 1e-12) {
                // Invariant subspace hit: continue in a fresh random
                // direction (also what splits degenerate multiplets).
                w = random_unit(dim, rng);
                w -= V.leftCols(j) * (V.leftCols(j).transpose() * w);
                w -= V.leftCols(j) * (V.leftCols(j).transpose() * w);
                beta = w.norm();
                H(j, j - 1) = H(j - 1, j) = 0.0;
                V.col(j) = w / beta;
            } else {
                H(j, j - 1) = H(j - 1, j) = beta;
                V.col(j) = w / beta;
            }
        }
        // One more projection column so the ncv-th basis vector's image
        // is represented: Rayleigh-Ritz on the leading ncv x ncv block.
        {
            Eigen::VectorXd w = op(V.col(ncv - 1));
            Eigen::VectorXd h = V.leftCols(ncv).transpose() * w;
            w.noalias() -= V.leftCols(ncv) * h;
            Eigen::VectorXd h2 = V.leftCols(ncv).transpose() * w;
            w.noalias() -= V.leftCols(ncv) * h2;
            h += h2;
            H.block(0, ncv - 1, ncv, 1) = h;
            H.block(ncv - 1, 0, 1, ncv) = h.transpose();
            double beta = w.norm();
            H(ncv, ncv - 1) = H(ncv - 1, ncv) = beta;
            if (beta > 1e-12)
                V.col(ncv) = w / beta;
            else
                V.col(ncv) = random_unit(dim, rng);
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            0.5 * (H.topLeftCorner(ncv, ncv) +
                   H.topLeftCorner(ncv, ncv).transpose()));
        // Ascending from Eigen; we want the largest first.
        Eigen::VectorXd theta = es.eigenvalues().reverse();
        Eigen::MatrixXd Y = es.eigenvectors().rowwise().reverse();

        out.theta.assign(theta.data(), theta.data() + opt.k);
        out.vectors = V.leftCols(ncv) * Y.leftCols(opt.k);
        out.restarts = cycle;
        if (accept(out.theta, out.vectors)) {
            out.converged = true;
            return out;
        }

        // Thick restart: keep nkeep Ritz vectors and the residual
        // direction; re-seed the projected matrix with their exact
        // Rayleigh quotients. The coupling row regenerates itself when
        // the residual column is expanded next cycle.
        Eigen::MatrixXd X = V.leftCols(ncv) * Y.leftCols(nkeep);
        V.leftCols(nkeep) = X;
        V.col(nkeep) = V.col(ncv);
        H.setZero();
        for (int i = 0; i < nkeep; ++i) H(i, i) = theta[i];
        j = nkeep + 1;
    }
    throw convergence_error("lanczos: restart budget exhausted before the "
                            "requested accuracy");
}

} // namespace vclab
