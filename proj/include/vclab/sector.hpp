#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vclab/model.hpp"

namespace vclab {

// Coupling block T (size x size) between the two components of an
// angular-momentum sector with |l| >= 1, in normalized radial bases with
// superscripts m = |l|-1 (upper) and m+2 (lower):
//   T[N][K] = B_{N,m} B_{K,m+2} / 4 * Int_0^inf u^{m+2} L_N^m L_K^{m+2} e^{-u} du.
// Assembled by exact-degree Gauss-Laguerre quadrature; the integral
// vanishes for K < N-2 and K > N, so T is lower-banded with bandwidth 2.
Eigen::MatrixXd potential_matrix_elements(int abs_l, int size);

// Dense sector Hamiltonian at unit scale (a = 1, coupling btilde).
//
// |l| >= 1: 2M x 2M with diagonal blocks diag(2N+|l|), diag(2N+|l|+2)
// and off-diagonal btilde*T. l = 0: block-diagonal pair of exact
// tridiagonals for the decoupled radial branches, frequencies
// sqrt(1 +- btilde).
struct SectorOperator {
    int l = 0;
    double btilde = 0.0;
    int modes = 0; // radial modes per component; matrix is 2*modes square
    Eigen::MatrixXd H;
};

SectorOperator build_sector(int l, double btilde, int modes);

struct SectorSpectrum {
    int l = 0;
    double btilde = 0.0;
    int modes = 0;                 // basis size the values were computed at
    std::vector<double> values;    // k lowest, ascending
    std::vector<double> residuals; // ||H v - lambda v|| in that basis
};

// k lowest eigenvalues of an assembled sector matrix.
SectorSpectrum sector_spectrum(const SectorOperator& op, int k);

// Doubles the basis until the k lowest values move by < tol between
// consecutive sizes. Throws convergence_error if the cap is hit.
struct ConvergeOpts {
    int start_modes = 48;
    int max_modes = 3072;
    double tol = 1e-10;
};
SectorSpectrum converged_sector_spectrum(int l, double btilde, int k,
                                         ConvergeOpts opts = {});

} // namespace vclab
