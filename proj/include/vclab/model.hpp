#pragma once

#include <array>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "vclab/common.hpp"

namespace vclab {

// Couplings of the quadratic vibronic Hamiltonian
//   H = -1/2 (Dxx+Dyy) ⊗ I2 + [[ (a+b)/2 x^2 + (a-b)/2 y^2,  b x y ],
//                              [  b x y,  (a-b)/2 x^2 + (a+b)/2 y^2 ]]
// with 0 <= b < a so both potential sheets are confining.
struct ModelParams {
    double a = 1.0;
    double b = 0.0;

    double btilde() const { return b / a; }
    // Energy rescaling: spectrum(a, b) = sqrt(a) * spectrum(1, b/a).
    double scale() const;
};

ModelParams make_params(double a, double b);

// Map a unit-scale eigenvalue (a=1) back to physical couplings.
double rescale_eigenvalue(double unit_value, const ModelParams& p);

// Angular-momentum sector label. l runs over all integers; the Hamiltonian
// commutes with J = -i d/phi + S, so the spectrum decomposes into sectors
// with E(l) = E(-l).
struct SectorIndex {
    int l = 0;
    bool zero() const { return l == 0; }
    int abs_l() const { return l < 0 ? -l : l; }
};

// One exact solution of the quartic-matrix-potential compatibility system
//   1 = b11^2 + b12^2
//   2 = 2 b11 + c11^2 + c12^2
//   0 = 2 (b11 c11 + b12 c12)
//   0 = 2 c11
// Entries are exact rationals; residuals() evaluates all four polynomials
// exactly (they must vanish identically).
struct MatrixFormSolution {
    mpq_class b11, b12, c11, c12;
    std::array<mpq_class, 4> residuals() const;
    std::string str() const;
};

// All real solutions of the compatibility system, by exhaustive case
// analysis (no numerics). Order: (-1,0,0,2), (-1,0,0,-2), (1,0,0,0).
std::vector<MatrixFormSolution> matrixform_solutions();

} // namespace vclab
