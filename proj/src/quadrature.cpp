#include "vclab/quadrature.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace vclab {

namespace {

// Rescale a running pair of recurrence values back toward O(1),
// accounting for the shift in the shared exponent.
void relevel(double& a, double& b, long& e2) {
    const double big = 0x1p500, small = 0x1p-500;
    double m = std::max(std::fabs(a), std::fabs(b));
    if (m > big) {
        a = std::ldexp(a, -500);
        b = std::ldexp(b, -500);
        e2 += 500;
    } else if (m != 0.0 && m < small) {
        a = std::ldexp(a, 500);
        b = std::ldexp(b, 500);
        e2 -= 500;
    }
}

} // namespace

double Scaled::value() const { return std::ldexp(mant, static_cast<int>(e2)); }

double GaussLaguerreRule::weight(int i) const {
    return weight_exp[i] * std::exp(-node[i]);
}

GaussLaguerreRule gauss_laguerre(int n) {
    require(n >= 1, "gauss_laguerre: rule size must be >= 1");

    // Nodes: eigenvalues of the symmetric Jacobi matrix for alpha = 0,
    // diag(2i+1), offdiag(i).
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + 1.0;
    for (int i = 0; i + 1 < n; ++i) sub[i] = i + 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    GaussLaguerreRule rule;
    rule.node.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    rule.weight_exp.resize(n);

    // w_i e^{x_i} = x_i / ((n+1)^2 [L_{n+1}(x_i) e^{-x_i/2}]^2); the
    // half-exponential factor rides inside the scaled recurrence so the
    // formula never touches an unrepresentable intermediate.
    for (int i = 0; i < n; ++i) {
        double x = rule.node[i];
        auto phi = scaled_radial_modes(0, x, n + 2);
        const Scaled& p = phi[n + 1];
        double w = x / (double(n + 1) * double(n + 1) * p.mant * p.mant);
        rule.weight_exp[i] = std::ldexp(w, static_cast<int>(-2 * p.e2));
    }
    return rule;
}

std::vector<Scaled> scaled_radial_modes(int m, double x, int count) {
    require(m >= 0, "scaled_radial_modes: m must be >= 0");
    require(x > 0.0, "scaled_radial_modes: x must be > 0");
    require(count >= 1, "scaled_radial_modes: count must be >= 1");

    std::vector<Scaled> out(count);

    // Seed x^{m/2} e^{-x/2} = 2^t, split into mantissa and exponent.
    double t = (0.5 * m * std::log(x) - 0.5 * x) / std::log(2.0);
    long e2 = static_cast<long>(std::floor(t));
    double lm1 = std::exp2(t - e2); // phi_0 mantissa
    out[0] = {lm1, e2};
    if (count == 1) return out;

    double l = (1.0 + m - x) * lm1; // phi_1 shares phi_0's exponent
    relevel(lm1, l, e2);
    out[1] = {l, e2};

    for (int k = 1; k + 1 < count; ++k) {
        double lp1 = ((2.0 * k + m + 1.0 - x) * l - (k + m) * lm1) / (k + 1);
        lm1 = l;
        l = lp1;
        relevel(lm1, l, e2);
        out[k + 1] = {l, e2};
    }
    return out;
}

} // namespace vclab
