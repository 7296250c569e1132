#pragma once

#include <vector>

#include "vclab/common.hpp"

namespace vclab {

// Generalized Laguerre polynomial L_K^{(alpha)}(u) by the three-term
// recurrence (stable for u >= 0).
double laguerre_eval(int K, double alpha, double u);

// Normalization constant B_{K,m} = sqrt(2 K! / (K+m)!) making
//   B_{K,m} u^{m/2} L_K^m(u) e^{-u/2},  u = r^2,
// an orthonormal radial mode under \int_0^inf ... dr with the u = r^2
// substitution (du = 2 r dr).
double laguerre_norm(int K, int m);

// One exact eigenvalue of the decoupled l = 0 problem: the two radial
// branches are harmonic oscillators with frequencies sqrt(1 -+ btilde),
// giving E = (2N + 2) sqrt(1 -+ btilde), each nondegenerate.
struct ExactLevel {
    double value = 0.0;
    int sign = +1; // +1: the (1+btilde) branch; -1: the (1-btilde) branch
    int N = 0;     // radial quantum number
};

// All l = 0 levels with N = 0..n_max from both branches, sorted ascending.
// Unit scale (a = 1); apply rescale_eigenvalue for physical couplings.
std::vector<ExactLevel> exact_l0_levels(double btilde, int n_max);

// Value of a single exact level.
double exact_l0_value(int sign, int N, double btilde);

} // namespace vclab
