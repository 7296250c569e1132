#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "vclab/analysis.hpp"
#include "vclab/common.hpp"
#include "vclab/fdgrid.hpp"
#include "vclab/model.hpp"

using namespace vclab;

TEST_SUITE_BEGIN("fdgrid");

TEST_CASE("grid geometry: spacing and interior coordinates") {
    GridSpec g{2.0, 19};
    CHECK(g.h() == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("assembly: dimensions, symmetry, sampled entries") {
    const double bt = 0.37;
    GridSpec g{4.0, 16};
    GridOperator op = assemble_grid(bt, g);
    const int n = g.n;
    const double h = g.h();
    const Eigen::Index np = Eigen::Index(n) * n;

    CHECK(op.dim() == 2 * np);
    CHECK(op.btilde == bt);
    CHECK(op.scale == 1.0);

    Eigen::SparseMatrix<double> asym = Eigen::SparseMatrix<double>(
        op.H - Eigen::SparseMatrix<double>(op.H.transpose()));
    CHECK(asym.norm() == 0.0);

    auto coord = [&](int i) { return -g.box_L + (i + 1) * h; };

    // diagonal of the first component at (i, jy) = (3, 9)
    {
        int i = 3, jy = 9;
        Eigen::Index p = Eigen::Index(i) * n + jy;
        double x = coord(i), y = coord(jy);
        double want =
            2.0 / (h * h) + 0.5 * ((1.0 + bt) * x * x + (1.0 - bt) * y * y);
        CHECK(op.H.coeff(p, p) == doctest::Approx(want).epsilon(1e-14));
        // second component has the x/y roles swapped
        double want2 =
            2.0 / (h * h) + 0.5 * ((1.0 - bt) * x * x + (1.0 + bt) * y * y);
        CHECK(op.H.coeff(np + p, np + p) ==
              doctest::Approx(want2).epsilon(1e-14));
        // coupling between the sheets
        CHECK(op.H.coeff(p, np + p) ==
              doctest::Approx(bt * x * y).epsilon(1e-14));
        CHECK(op.H.coeff(np + p, p) ==
              doctest::Approx(bt * x * y).epsilon(1e-14));
        // nearest-neighbour kinetic entries
        CHECK(op.H.coeff(p, p + 1) ==
              doctest::Approx(-0.5 / (h * h)).epsilon(1e-14));
        CHECK(op.H.coeff(p, p + n) ==
              doctest::Approx(-0.5 / (h * h)).epsilon(1e-14));
    }

    // Dirichlet boundary: no wraparound coupling across a row edge.
    {
        int i = 2, jy = n - 1;
        Eigen::Index p = Eigen::Index(i) * n + jy;
        CHECK(op.H.coeff(p, p + 1) == 0.0);
    }
}

TEST_CASE("uncoupled operator separates into 1d oscillator sums exactly") {
    // At btilde = 0 both sheets decouple and the discrete 2d matrix is a
    // Kronecker sum of one identical 1d tridiagonal per axis, so the 2d
    // eigenvalues are exactly the pairwise sums of the 1d ones (each
    // doubled by the two sheets).
    GridSpec g{8.0, 20};
    const int n = g.n;
    const double h = g.h();

    Eigen::MatrixXd one = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double x = -g.box_L + (i + 1) * h;
        one(i, i) = 1.0 / (h * h) + 0.5 * x * x;
        if (i + 1 < n) {
            one(i, i + 1) = -0.5 / (h * h);
            one(i + 1, i) = -0.5 / (h * h);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(one);
    std::vector<double> sums;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sums.push_back(es.eigenvalues()[i] + es.eigenvalues()[j]);
    std::sort(sums.begin(), sums.end());

    GridOperator op = assemble_grid(0.0, g); // dim 800: dense path
    auto res = fd_lowest(op, 16, 1e-10);
    for (int i = 0; i < 16; ++i)
        CHECK(res.values[i] ==
              doctest::Approx(sums[i / 2]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("sparse path reproduces a frozen medium-grid spectrum") {
    // n = 63 puts the dimension (7938) above the dense cutoff. Reference
    // values come from an independent sparse eigensolver on the same
    // stencil.
    GridSpec g{8.0, 63};
    GridOperator op = assemble_grid(0.5, g);
    auto res = fd_lowest(op, 5, 1e-9);

    const double want[5] = {0.9256351232, 0.9256351232, 1.4083284427,
                            1.7771492886, 1.7799155682};
    REQUIRE(res.values.size() == 5);
    for (int i = 0; i < 5; ++i)
        CHECK(res.values[i] == doctest::Approx(want[i]).epsilon(5e-7));
    for (double r : res.residuals) CHECK(r <= 1e-8);
    // the +-l doublet is degenerate on the grid as well
    CHECK(std::fabs(res.values[0] - res.values[1]) < 5e-8);
}

TEST_CASE("dense and sparse routes agree on the same matrix") {
    GridSpec g{8.0, 31};
    GridOperator op = assemble_grid(0.3, g); // dim 1922
    auto dense = fd_lowest(op, 6, 1e-10);

    FdSolveOpts force;
    force.dense_cutoff = 0; // push the same problem through Lanczos
    auto sparse = fd_lowest(op, 6, 1e-10, force);

    for (int i = 0; i < 6; ++i)
        CHECK(sparse.values[i] ==
              doctest::Approx(dense.values[i]).epsilon(1e-9));
    CHECK(sparse.restarts >= 0);
}

TEST_CASE("physical assembly is the exact scaling of the unit one") {
    const double a = 2.3, b = 1.1;
    ModelParams p = make_params(a, b);
    GridSpec unit{8.0, 17};
    GridSpec phys{8.0 / std::pow(a, 0.25), 17};

    GridOperator U = assemble_grid(p.btilde(), unit);
    GridOperator P = assemble_grid_physical(a, b, phys);
    CHECK(P.scale == doctest::Approx(std::sqrt(a)).epsilon(1e-15));

    Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(
        P.H - Eigen::SparseMatrix<double>(std::sqrt(a) * U.H));
    CHECK(diff.norm() <= 1e-12 * P.H.norm());

    // and the eigenvalues rescale accordingly (dense route, dim 578)
    auto pu = fd_lowest(U, 3, 1e-10);
    auto pp = fd_lowest(P, 3, 1e-10);
    for (int i = 0; i < 3; ++i)
        CHECK(pp.values[i] ==
              doctest::Approx(rescale_eigenvalue(pu.values[i], p))
                  .epsilon(1e-11));
}

TEST_CASE("discretization error shrinks like h^2") {
    // btilde = 0 ground state is exactly 1; halving h must cut the error
    // by about 4.
    GridSpec g31{8.0, 31}, g63{8.0, 63};
    auto e31 = fd_lowest(assemble_grid(0.0, g31), 2, 1e-10);
    auto e63 = fd_lowest(assemble_grid(0.0, g63), 2, 1e-10);
    double d31 = 1.0 - e31.values[0];
    double d63 = 1.0 - e63.values[0];
    CHECK(d31 > 0.0);
    CHECK(d63 > 0.0);
    CHECK(d31 / d63 == doctest::Approx(4.0).epsilon(0.13));
}

TEST_CASE("uncoupled census: cluster sizes 2, 4, 6 and a split shell") {
    // Exact uncoupled levels are the integers N with multiplicities
    // 2N; 17 states cover shells 1..3 and five members of shell 4.
    GridSpec g{8.0, 127};
    GridOperator op = assemble_grid(0.0, g);
    auto res = fd_lowest(op, 17, 1e-8);
    REQUIRE(std::is_sorted(res.values.begin(), res.values.end()));

    auto clusters = cluster_values(res.values, 0.1);
    REQUIRE(clusters.size() == 4);
    const int want_size[4] = {2, 4, 6, 5};
    for (int i = 0; i < 4; ++i) {
        CHECK(clusters[i].second == want_size[i]);
        CHECK(std::fabs(clusters[i].first - (i + 1)) < 0.02);
    }
}

TEST_CASE("iteration budget exhaustion raises a convergence error") {
    GridSpec g{8.0, 31};
    GridOperator op = assemble_grid(0.5, g);
    FdSolveOpts opts;
    opts.dense_cutoff = 0;
    opts.max_restarts = 0;
    CHECK_THROWS_AS(fd_lowest(op, 4, 1e-10, opts), convergence_error);
}

TEST_CASE("sweep walks the coupling grid and warm-starts") {
    GridSpec g{8.0, 31};
    FdSolveOpts base;
    base.dense_cutoff = 0; // keep the warm-start machinery engaged
    auto pts = fd_sweep({0.2, 0.5}, g, 5, 1e-9, base);
    REQUIRE(pts.size() == 2);
    for (const auto& pt : pts) {
        CHECK(pt.ok());
        REQUIRE(pt.values.size() == 5);
        CHECK(std::is_sorted(pt.values.begin(), pt.values.end()));
    }
    CHECK(pts[0].btilde == 0.2);
    CHECK(pts[1].btilde == 0.5);
    // stronger coupling pushes the ground state down
    CHECK(pts[1].values[0] < pts[0].values[0]);
}

TEST_CASE("sweep records a failed point instead of aborting") {
    GridSpec g{8.0, 31};
    FdSolveOpts base;
    base.dense_cutoff = 0;
    base.max_restarts = 0;
    auto pts = fd_sweep({0.4}, g, 3, 1e-10, base);
    REQUIRE(pts.size() == 1);
    CHECK(!pts[0].ok());
    CHECK(!pts[0].error.empty());
    CHECK(pts[0].values.empty());
}

TEST_CASE("argument validation") {
    GridSpec g{8.0, 31};
    CHECK_THROWS_AS(assemble_grid(0.5, GridSpec{8.0, 8}), validation_error);
    CHECK_THROWS_AS(assemble_grid(0.5, GridSpec{8.0, 2000}), validation_error);
    CHECK_THROWS_AS(assemble_grid(0.5, GridSpec{-1.0, 31}), validation_error);
    CHECK_THROWS_AS(assemble_grid(1.0, g), validation_error);
    CHECK_THROWS_AS(assemble_grid(-0.1, g), validation_error);

    GridOperator op = assemble_grid(0.2, GridSpec{8.0, 16});
    CHECK_THROWS_AS(fd_lowest(op, 0, 1e-8), validation_error);
    CHECK_THROWS_AS(fd_lowest(op, 65, 1e-8), validation_error);
    CHECK_THROWS_AS(fd_lowest(op, 2, 0.0), validation_error);
    CHECK_THROWS_AS(fd_sweep({}, g, 2, 1e-8), validation_error);
}

TEST_SUITE_END();
