#include "vclab/laguerre.hpp"

#include <algorithm>
#include <cmath>

namespace vclab {

double laguerre_eval(int K, double alpha, double u) {
    require(K >= 0, "laguerre_eval: K must be >= 0");
    if (K == 0) return 1.0;
    double lm1 = 1.0;            // L_0
    double l = 1.0 + alpha - u;  // L_1
    for (int k = 1; k < K; ++k) {
        double lp1 = ((2.0 * k + alpha + 1.0 - u) * l - (k + alpha) * lm1) / (k + 1);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double laguerre_norm(int K, int m) {
    require(K >= 0 && m >= 0, "laguerre_norm: need K, m >= 0");
    // sqrt(2 K!/(K+m)!) via log-gamma to avoid overflow for large K+m.
    double lg = std::lgamma(K + 1.0) - std::lgamma(K + m + 1.0);
    return std::exp(0.5 * (std::log(2.0) + lg));
}

double exact_l0_value(int sign, int N, double btilde) {
    require(sign == +1 || sign == -1, "branch sign must be +-1");
    require(N >= 0, "radial quantum number must be >= 0");
    require(btilde >= 0.0 && btilde < 1.0, "need 0 <= btilde < 1");
    return (2.0 * N + 2.0) * std::sqrt(1.0 + sign * btilde);
}

std::vector<ExactLevel> exact_l0_levels(double btilde, int n_max) {
    require(n_max >= 0, "n_max must be >= 0");
    std::vector<ExactLevel> out;
    out.reserve(2 * (n_max + 1));
    for (int sign : {-1, +1})
        for (int N = 0; N <= n_max; ++N)
            out.push_back({exact_l0_value(sign, N, btilde), sign, N});
    std::sort(out.begin(), out.end(),
              [](const ExactLevel& x, const ExactLevel& y) { return x.value < y.value; });
    return out;
}

} // namespace vclab
