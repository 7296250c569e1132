#include "vclab/sector.hpp"

#include <cmath>

#include "vclab/laguerre.hpp"
#include "vclab/quadrature.hpp"

namespace vclab {

Eigen::MatrixXd potential_matrix_elements(int abs_l, int size) {
    require(abs_l >= 1, "potential_matrix_elements: need |l| >= 1");
    require(size >= 1, "potential_matrix_elements: need size >= 1");
    const int m = abs_l - 1;

    // Integrand u^{m+2} L_N^m L_K^{m+2} e^{-u} has polynomial degree
    // 2(size-1) + m + 2; this rule size is exact for it.
    const int nq = size + m / 2 + 2;
    GaussLaguerreRule rule = gauss_laguerre(nq);

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < nq; ++i) {
        const double x = rule.node[i];
        // phi products supply u^{m+1} e^{-u}; one extra x and the
        // stripped-weight w e^{x} complete the integrand.
        auto up = scaled_radial_modes(m, x, size);
        auto low = scaled_radial_modes(m + 2, x, size);
        const double wx = rule.weight_exp[i] * x;
        for (int N = 0; N < size; ++N) {
            for (int K = N - 2; K <= N; ++K) {
                if (K < 0) continue;
                double prod = up[N].mant * low[K].mant;
                long e2 = up[N].e2 + low[K].e2;
                T(N, K) += wx * std::ldexp(prod, static_cast<int>(e2));
            }
        }
    }
    for (int N = 0; N < size; ++N)
        for (int K = std::max(0, N - 2); K <= N; ++K)
            T(N, K) *= 0.25 * laguerre_norm(N, m) * laguerre_norm(K, m + 2);
    return T;
}

namespace {

// Exact tridiagonal for one decoupled l = 0 radial branch in the
// normalized superscript-1 basis (both components carry the centrifugal
// 1/(2 r^2), hence m = 1): H_+- has diagonal (2N+2)(1 +- btilde/2) and
// off-diagonal -+ (btilde/2) sqrt((N+1)(N+2)).
void fill_l0_block(Eigen::Ref<Eigen::MatrixXd> B, int sign, double btilde) {
    const int M = static_cast<int>(B.rows());
    for (int N = 0; N < M; ++N) {
        B(N, N) = (2.0 * N + 2.0) * (1.0 + sign * 0.5 * btilde);
        if (N + 1 < M) {
            double off = -sign * 0.5 * btilde *
                         std::sqrt((N + 1.0) * (N + 2.0));
            B(N, N + 1) = off;
            B(N + 1, N) = off;
        }
    }
}

} // namespace

SectorOperator build_sector(int l, double btilde, int modes) {
    require(btilde >= 0.0 && btilde < 1.0, "need 0 <= btilde < 1");
    require(modes >= 1, "need at least one radial mode per component");

    SectorOperator op;
    op.l = l;
    op.btilde = btilde;
    op.modes = modes;
    op.H = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);

    if (l == 0) {
        fill_l0_block(op.H.topLeftCorner(modes, modes), +1, btilde);
        fill_l0_block(op.H.bottomRightCorner(modes, modes), -1, btilde);
        return op;
    }

    const int absl = l < 0 ? -l : l;
    Eigen::MatrixXd T = potential_matrix_elements(absl, modes);
    Eigen::MatrixXd D1 = Eigen::MatrixXd::Zero(modes, modes);
    Eigen::MatrixXd D2 = Eigen::MatrixXd::Zero(modes, modes);
    for (int N = 0; N < modes; ++N) {
        D1(N, N) = 2.0 * N + absl;
        D2(N, N) = 2.0 * N + absl + 2.0;
    }
    // l > 0 puts the superscript (|l|-1) component first; l < 0 is the
    // mirror image (same spectrum, order kept for the swap symmetry).
    if (l > 0) {
        op.H.topLeftCorner(modes, modes) = D1;
        op.H.bottomRightCorner(modes, modes) = D2;
        op.H.topRightCorner(modes, modes) = btilde * T;
        op.H.bottomLeftCorner(modes, modes) = btilde * T.transpose();
    } else {
        op.H.topLeftCorner(modes, modes) = D2;
        op.H.bottomRightCorner(modes, modes) = D1;
        op.H.topRightCorner(modes, modes) = btilde * T.transpose();
        op.H.bottomLeftCorner(modes, modes) = btilde * T;
    }
    return op;
}

SectorSpectrum sector_spectrum(const SectorOperator& op, int k) {
    const int dim = static_cast<int>(op.H.rows());
    require(k >= 1 && k <= dim, "requested level count exceeds matrix size");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.H);
    SectorSpectrum s;
    s.l = op.l;
    s.btilde = op.btilde;
    s.modes = op.modes;
    s.values.resize(k);
    s.residuals.resize(k);
    for (int i = 0; i < k; ++i) {
        s.values[i] = es.eigenvalues()[i];
        Eigen::VectorXd v = es.eigenvectors().col(i);
        s.residuals[i] = (op.H * v - s.values[i] * v).norm();
    }
    return s;
}

SectorSpectrum converged_sector_spectrum(int l, double btilde, int k,
                                         ConvergeOpts opts) {
    require(k >= 1, "need k >= 1");
    require(opts.start_modes >= 1 && opts.max_modes >= opts.start_modes,
            "bad basis-size bracket");

    int M = std::max(opts.start_modes, k); // k <= 2M always holds after this
    SectorSpectrum prev = sector_spectrum(build_sector(l, btilde, M), k);
    while (2 * M <= opts.max_modes) {
        M *= 2;
        SectorSpectrum cur = sector_spectrum(build_sector(l, btilde, M), k);
        double drift = 0.0;
        for (int i = 0; i < k; ++i)
            drift = std::max(drift, std::fabs(cur.values[i] - prev.values[i]));
        if (drift < opts.tol) return cur;
        prev = cur;
    }
    throw convergence_error("sector basis doubling hit the size cap before "
                            "reaching tolerance");
}

} // namespace vclab
