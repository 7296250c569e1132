#include "vclab/fdgrid.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace vclab {

namespace {

void check_grid(const GridSpec& g) {
    require(std::isfinite(g.box_L) && g.box_L > 0.0, "box half-width must be > 0");
    require(g.n >= 16, "grid too coarse: need n >= 16 interior points");
    require(g.n <= 1024, "grid too large: n > 1024 would not fit the solver "
                         "budget");
}

// Core assembly shared by the unit-scale and physical variants. The
// potential blocks are diag(vup), diag(vdn) with off-diagonal diag(vxy).
GridOperator assemble_impl(double kin, double cxx_up, double cyy_up,
                           double cxy, GridSpec g, double btilde,
                           double scale) {
    const int n = g.n;
    const double h = g.h();
    const Eigen::Index np = Eigen::Index(n) * n;

    std::vector<double> coord(n);
    for (int i = 0; i < n; ++i) coord[i] = -g.box_L + (i + 1) * h;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(12 * np);

    const double diag_kin = 2.0 * kin / (h * h); // -1/2 Laplacian, 5-point
    const double off_kin = -0.5 * kin / (h * h);

    auto add_component = [&](Eigen::Index base, double cxx, double cyy) {
        for (int i = 0; i < n; ++i) {
            for (int jy = 0; jy < n; ++jy) {
                Eigen::Index p = base + Eigen::Index(i) * n + jy;
                double v = 0.5 * (cxx * coord[i] * coord[i] +
                                  cyy * coord[jy] * coord[jy]);
                trip.emplace_back(p, p, diag_kin + v);
                if (i + 1 < n) {
                    trip.emplace_back(p, p + n, off_kin);
                    trip.emplace_back(p + n, p, off_kin);
                }
                if (jy + 1 < n) {
                    trip.emplace_back(p, p + 1, off_kin);
                    trip.emplace_back(p + 1, p, off_kin);
                }
            }
        }
    };
    add_component(0, cxx_up, cyy_up);
    add_component(np, cyy_up, cxx_up); // mirrored sheet

    for (int i = 0; i < n; ++i)
        for (int jy = 0; jy < n; ++jy) {
            Eigen::Index p = Eigen::Index(i) * n + jy;
            double v = cxy * coord[i] * coord[jy];
            trip.emplace_back(p, np + p, v);
            trip.emplace_back(np + p, p, v);
        }

    GridOperator op;
    op.grid = g;
    op.btilde = btilde;
    op.scale = scale;
    op.H.resize(2 * np, 2 * np);
    op.H.setFromTriplets(trip.begin(), trip.end());
    op.H.makeCompressed();
    return op;
}

} // namespace

GridOperator assemble_grid(double btilde, GridSpec g) {
    check_grid(g);
    require(btilde >= 0.0 && btilde < 1.0, "need 0 <= btilde < 1");
    return assemble_impl(1.0, 1.0 + btilde, 1.0 - btilde, btilde, g, btilde,
                         1.0);
}

GridOperator assemble_grid_physical(double a, double b, GridSpec g) {
    check_grid(g);
    ModelParams p = make_params(a, b);
    return assemble_impl(1.0, a + b, a - b, b, g, p.btilde(), p.scale());
}

FdEigenResult fd_lowest(const GridOperator& op, int k, double tol,
                        const FdSolveOpts& opts) {
    require(k >= 1 && k <= 64, "need 1 <= k <= 64 eigenvalues");
    require(tol > 0.0, "tolerance must be > 0");
    const Eigen::Index dim = op.dim();

    FdEigenResult out;
    if (dim <= opts.dense_cutoff) {
        Eigen::MatrixXd dense(op.H);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
        out.vectors = es.eigenvectors().leftCols(k);
        out.residuals.resize(k);
        for (int i = 0; i < k; ++i)
            out.residuals[i] =
                (op.H * out.vectors.col(i) - out.values[i] * out.vectors.col(i))
                    .norm();
        return out;
    }

    // Shift-invert at the origin: the operator is positive definite
    // (bounded below by the ground state), so the largest eigenvalues of
    // H^{-1} are the lowest of H.
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(op.H);
    if (ldlt.info() != Eigen::Success)
        throw convergence_error("sparse factorization failed");

    auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return ldlt.solve(x);
    };

    std::vector<double> res_buf(k);
    auto accept = [&](const std::vector<double>& theta,
                      const Eigen::MatrixXd& X) {
        for (int i = 0; i < k; ++i) {
            if (theta[i] <= 0.0) return false; // inverse spectrum not resolved
            double lambda = 1.0 / theta[i];
            res_buf[i] = (op.H * X.col(i) - lambda * X.col(i)).norm();
            if (res_buf[i] > tol * std::max(1.0, std::fabs(lambda)))
                return false;
        }
        return true;
    };

    LanczosOptions lo;
    lo.k = k;
    lo.ncv = opts.ncv;
    lo.max_restarts = opts.max_restarts;
    lo.seed = opts.seed;
    LanczosResult lr =
        lanczos_largest(apply, dim, accept, lo, opts.warm_start);

    out.restarts = lr.restarts;
    out.values.resize(k);
    out.residuals = res_buf;
    out.vectors.resize(dim, k);
    for (int i = 0; i < k; ++i) {
        out.values[i] = 1.0 / lr.theta[i];
        out.vectors.col(i) = lr.vectors.col(i);
    }
    // theta descending => lambda ascending already; enforce anyway.
    for (int i = 0; i + 1 < k; ++i)
        if (out.values[i] > out.values[i + 1] + 1e-12)
            throw convergence_error("inverse spectrum came back unsorted; "
                                    "subspace too small");
    return out;
}

std::vector<SweepPoint> fd_sweep(const std::vector<double>& btilde_grid,
                                 GridSpec g, int k, double tol,
                                 FdSolveOpts base_opts) {
    require(!btilde_grid.empty(), "empty coupling grid");
    std::vector<SweepPoint> out;
    out.reserve(btilde_grid.size());
    Eigen::VectorXd warm;
    for (double bt : btilde_grid) {
        SweepPoint pt;
        pt.btilde = bt;
        try {
            GridOperator op = assemble_grid(bt, g);
            FdSolveOpts so = base_opts;
            if (warm.size() == op.dim()) so.warm_start = &warm;
            FdEigenResult r = fd_lowest(op, k, tol, so);
            pt.values = r.values;
            pt.residuals = r.residuals;
            if (r.vectors.cols() > 0) warm = r.vectors.col(0);
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace vclab
