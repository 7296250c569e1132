#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "vclab/common.hpp"

namespace vclab {

// Exact coupling integral  I(N,K,m) = Int_0^inf u^{m+2} L_N^m(u) L_K^{m+2}(u) e^{-u} du
// as a rational number (Laguerre coefficients expanded exactly, factorial
// moments). Vanishes unless N-2 <= K <= N.
mpq_class coupling_integral_exact(int N, int K, int m);

enum class Branch {
    Single, // nondegenerate level (sector ground state)
    Up,     // +sqrt branch of a degenerate pair
    Down,   // -sqrt branch
};

// One series coefficient, exact: rat + surd * sqrt(disc), with disc
// square-free (disc == 1 means the coefficient is plain rational and
// surd == 0).
struct SeriesCoeff {
    mpq_class rat = 0;
    mpq_class surd = 0;
    unsigned long disc = 1;
    bool is_zero() const { return rat == 0 && surd == 0; }
    double value() const;
    std::string exact() const;
};

struct PerturbSeries {
    int abs_l = 1;
    int level_N = 0; // 0: sector ground; N>=1: the pair split at first order
    Branch branch = Branch::Single;
    std::vector<SeriesCoeff> coeff; // coeff[k] multiplies btilde^k
    int order() const { return static_cast<int>(coeff.size()) - 1; }
};

// Rayleigh-Schrodinger series for the ground state of sector |l| >= 1
// (unperturbed value |l|, nondegenerate). All coefficients exact
// rationals; odd orders vanish identically.
PerturbSeries series_nondegenerate(int abs_l, int order);

// Series for the degenerate pair at unperturbed value 2N + |l| (N >= 1):
// the coupling splits it at first order by +-sqrt(N(N+|l|)). Returns
// {Up, Down}. Coefficients live in the quadratic field attached to that
// square root; the recursion keeps the full cross-branch component of
// every correction vector, so truncations converge to the true
// eigenvalues, not merely to a first-order-seeded approximation.
std::pair<PerturbSeries, PerturbSeries> series_degenerate(int level_N,
                                                          int abs_l,
                                                          int order);

// Truncated evaluation sum_{k<=order} coeff[k] * btilde^k
// (order = -1: use everything).
double series_eval(const PerturbSeries& s, double btilde, int order = -1);

// Convergence-radius estimate from coefficient decay: consecutive-ratio
// roots over the nonzero tail, median of the top third. Needs a series
// of order >= 10 with enough nonzero terms.
double radius_estimate(const PerturbSeries& s);

} // namespace vclab
