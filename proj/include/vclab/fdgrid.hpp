#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "vclab/lanczos.hpp"
#include "vclab/model.hpp"

namespace vclab {

// Uniform Dirichlet grid on [-L, L]^2: n interior points per axis,
// spacing h = 2L/(n+1). The two spinor components are stacked, so the
// matrix dimension is 2 n^2.
struct GridSpec {
    double box_L = 8.0;
    int n = 191;
    double h() const { return 2.0 * box_L / (n + 1); }
};

struct GridOperator {
    GridSpec grid;
    double btilde = 0.0;
    double scale = 1.0; // eigenvalues approximate scale * (unit spectrum)
    Eigen::SparseMatrix<double> H;
    Eigen::Index dim() const { return H.rows(); }
};

// 5-point stencil discretization at unit couplings (a = 1).
GridOperator assemble_grid(double btilde, GridSpec g);

// Same discretization at physical couplings (a, b) on the given box.
// On the mapped box L_phys = L / a^{1/4} this matrix equals
// sqrt(a) * assemble_grid(b/a, {L, n}).H identically, entry by entry.
GridOperator assemble_grid_physical(double a, double b, GridSpec g);

struct FdSolveOpts {
    int ncv = 0;             // Lanczos subspace; 0 = auto
    int max_restarts = 80;
    std::uint64_t seed = 0x5eed5eedULL;
    Eigen::Index dense_cutoff = 6000; // full dense solve at or below this
    const Eigen::VectorXd* warm_start = nullptr;
};

struct FdEigenResult {
    std::vector<double> values;    // k lowest, ascending
    std::vector<double> residuals; // ||H v - lambda v||
    Eigen::MatrixXd vectors;       // dim x k
    int restarts = 0;
};

// k lowest eigenvalues: dense solve for small grids, otherwise
// shift-invert (sparse LDLT at the origin; the operator is positive
// definite) driven by thick-restart Lanczos. Residuals are measured
// against the original matrix, not the inverse.
FdEigenResult fd_lowest(const GridOperator& op, int k, double tol = 1e-8,
                        const FdSolveOpts& opts = {});

// One sweep point; `error` carries the failure text when a point did not
// converge (the sweep itself keeps going).
struct SweepPoint {
    double btilde = 0.0;
    std::vector<double> values, residuals;
    std::string error;
    bool ok() const { return error.empty(); }
};

// Lowest-k curves over a coupling grid, warm-starting each point from
// the previous one's ground vector. A point that fails to converge is
// recorded in its SweepPoint instead of aborting the sweep.
std::vector<SweepPoint> fd_sweep(const std::vector<double>& btilde_grid,
                                 GridSpec g, int k, double tol = 1e-8,
                                 FdSolveOpts base_opts = {});

} // namespace vclab
