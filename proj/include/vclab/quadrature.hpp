#pragma once

#include <vector>

#include "vclab/common.hpp"

namespace vclab {

// Gauss-Laguerre rule for weight e^{-x} on [0, inf).
//
// `node` are the Golub-Welsch nodes (eigenvalues of the Jacobi matrix).
// `weight_exp` stores w_i * e^{x_i}: the plain weights w_i underflow to
// zero beyond n ~ 180 at the large nodes, while w_i e^{x_i} stays O(1)
// for any rule size, so integrands are evaluated with their e^{-x}
// factor stripped.
struct GaussLaguerreRule {
    std::vector<double> node;
    std::vector<double> weight_exp;
    int size() const { return static_cast<int>(node.size()); }
    // Plain weight w_i (may underflow for large rules; fine for small n).
    double weight(int i) const;
};

GaussLaguerreRule gauss_laguerre(int n);

// A number m * 2^e kept in mantissa/exponent form so recurrences whose
// values sweep hundreds of orders of magnitude never leave the
// representable range.
struct Scaled {
    double mant = 0.0;
    long e2 = 0;
    double value() const; // collapses to double (0 / inf if out of range)
};

// Scaled radial factors phi_N(x) = x^{m/2} L_N^{(m)}(x) e^{-x/2} for
// N = 0..count-1 (no normalization constant). The e^{-x/2} is what makes
// products of two of these integrable against weight_exp directly.
std::vector<Scaled> scaled_radial_modes(int m, double x, int count);

} // namespace vclab
