#include "vclab/perturbation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace vclab {

namespace {

mpz_class factorial_z(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class binom_z(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Norm of the unnormalized radial mode u^{m/2} L_N^m e^{-u/2}:
// h(N, m) = (N+m)! / (2 N!).
mpq_class mode_norm_sq(int N, int m) {
    mpq_class h(factorial_z(N + m), 2 * factorial_z(N));
    h.canonicalize();
    return h;
}

// ---------------------------------------------------------------------
// Quadratic-field scalar a + b*sqrt(D). D == 1 plays the role of "plain
// rational" (b folded into a on normalization), which also absorbs the
// case where a degenerate splitting happens to be a perfect square.
struct Surd {
    mpq_class a = 0, b = 0;
    unsigned long D = 1;

    void normalize() {
        if (D == 1) { a += b; b = 0; }
        if (b == 0) D = 1;
    }
    bool is_zero() const { return a == 0 && b == 0; }
};

Surd make_surd(mpq_class a, mpq_class b, unsigned long D) {
    Surd s{std::move(a), std::move(b), D};
    s.normalize();
    return s;
}

unsigned long join_disc(const Surd& x, const Surd& y, const char* what) {
    if (x.D == y.D) return x.D;
    if (x.b == 0) return y.D;
    if (y.b == 0) return x.D;
    throw std::logic_error(std::string("mixed quadratic fields in ") + what);
}

Surd operator+(const Surd& x, const Surd& y) {
    return make_surd(x.a + y.a, x.b + y.b, join_disc(x, y, "add"));
}
Surd operator-(const Surd& x, const Surd& y) {
    return make_surd(x.a - y.a, x.b - y.b, join_disc(x, y, "sub"));
}
Surd operator-(const Surd& x) { return make_surd(-x.a, -x.b, x.D); }
Surd operator*(const Surd& x, const Surd& y) {
    unsigned long D = join_disc(x, y, "mul");
    return make_surd(x.a * y.a + x.b * y.b * mpz_class(D),
                     x.a * y.b + x.b * y.a, D);
}
Surd operator*(const Surd& x, const mpq_class& q) {
    return make_surd(x.a * q, x.b * q, x.D);
}
Surd operator/(const Surd& x, const mpq_class& q) {
    return make_surd(x.a / q, x.b / q, x.D);
}
Surd operator/(const Surd& x, const Surd& y) {
    if (y.b == 0) return x / y.a;
    // Multiply by the conjugate; the field norm a^2 - b^2 D of a nonzero
    // element is nonzero because D > 1 is square-free.
    mpq_class norm = y.a * y.a - y.b * y.b * mpz_class(y.D);
    Surd conj = make_surd(y.a, -y.b, y.D);
    return (x * conj) / norm;
}
Surd& operator+=(Surd& x, const Surd& y) { x = x + y; return x; }

// mpq_class and Surd plugged into the same recursion code.
struct RatOps {
    using value = mpq_class;
    static value zero() { return 0; }
    static bool is_zero(const value& v) { return v == 0; }
    static value mul_q(const value& v, const mpq_class& q) { return v * q; }
    static value div_q(const value& v, const mpq_class& q) { return v / q; }
};
struct SurdOps {
    using value = Surd;
    static value zero() { return Surd{}; }
    static bool is_zero(const value& v) { return v.is_zero(); }
    static value mul_q(const value& v, const mpq_class& q) { return v * q; }
    static value div_q(const value& v, const mpq_class& q) { return v / q; }
};

// Coefficients over the two-component radial basis: up[N] multiplies the
// unnormalized superscript-m mode, low[K] the superscript-(m+2) one.
template <class Ops>
struct CoefVec {
    std::vector<typename Ops::value> up, low;
    explicit CoefVec(int S)
        : up(S, Ops::zero()), low(S, Ops::zero()) {}
    int size() const { return static_cast<int>(up.size()); }
};

// Precomputed exact action of the coupling on basis modes:
//   V up_N  = sum_{K=N-2..N} w_to_low[N][K-N+2] low_K
//   V low_K = sum_{N=K..K+2} w_to_up[K][N-K]    up_N
struct CouplingTables {
    int m = 0;
    std::vector<std::array<mpq_class, 3>> w_to_low, w_to_up;
    std::vector<mpq_class> h_up, h_low; // squared norms of basis modes

    CouplingTables(int m_, int S) : m(m_), w_to_low(S), w_to_up(S),
                                    h_up(S), h_low(S) {
        for (int N = 0; N < S; ++N) {
            h_up[N] = mode_norm_sq(N, m);
            h_low[N] = mode_norm_sq(N, m + 2);
        }
        for (int N = 0; N < S; ++N)
            for (int K = std::max(0, N - 2); K <= N; ++K) {
                mpq_class q = coupling_integral_exact(N, K, m) / 4;
                w_to_low[N][K - N + 2] = q / h_low[K];
                if (N < S) w_to_up[K][N - K] = q / h_up[N];
            }
    }
};

template <class Ops>
CoefVec<Ops> apply_coupling(const CouplingTables& tab, const CoefVec<Ops>& v) {
    const int S = v.size();
    CoefVec<Ops> w(S);
    for (int N = 0; N < S; ++N) {
        if (Ops::is_zero(v.up[N])) continue;
        for (int K = std::max(0, N - 2); K <= N; ++K)
            w.low[K] += Ops::mul_q(v.up[N], tab.w_to_low[N][K - N + 2]);
    }
    for (int K = 0; K < S; ++K) {
        if (Ops::is_zero(v.low[K])) continue;
        for (int N = K; N <= K + 2; ++N) {
            if (N >= S)
                throw std::logic_error("coupling support outran the buffer");
            w.up[N] += Ops::mul_q(v.low[K], tab.w_to_up[K][N - K]);
        }
    }
    return w;
}

template <class Ops>
typename Ops::value inner(const CouplingTables& tab, const CoefVec<Ops>& x,
                          const CoefVec<Ops>& y) {
    typename Ops::value acc = Ops::zero();
    for (int N = 0; N < x.size(); ++N) {
        if (!Ops::is_zero(x.up[N]) && !Ops::is_zero(y.up[N]))
            acc += Ops::mul_q(x.up[N] * y.up[N], tab.h_up[N]);
        if (!Ops::is_zero(x.low[N]) && !Ops::is_zero(y.low[N]))
            acc += Ops::mul_q(x.low[N] * y.low[N], tab.h_low[N]);
    }
    return acc;
}

// Square-free decomposition n = f^2 * D by trial division.
void squarefree(unsigned long n, unsigned long& f, unsigned long& D) {
    f = 1;
    D = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        unsigned long e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (unsigned long i = 0; i + 1 < e; i += 2) f *= p;
        if (e % 2) D *= p;
    }
    D *= n;
}

void check_series_args(int abs_l, int order) {
    require(abs_l >= 1 && abs_l <= 64, "need 1 <= |l| <= 64");
    require(order >= 1 && order <= 40, "series order must be in [1, 40]");
}

} // namespace

mpq_class coupling_integral_exact(int N, int K, int m) {
    require(N >= 0 && K >= 0 && m >= 0,
            "coupling_integral_exact: indices must be >= 0");
    // Expand both polynomials exactly: L_N^m = sum_i (-1)^i C(N+m, N-i)/i! u^i,
    // then integrate term by term with Int u^p e^{-u} = p!.
    mpq_class I = 0;
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= K; ++j) {
            mpz_class num = binom_z(N + m, N - i) * binom_z(K + m + 2, K - j) *
                            factorial_z(i + j + m + 2);
            mpq_class term(num, factorial_z(i) * factorial_z(j));
            term.canonicalize();
            I += ((i + j) % 2) ? -term : term;
        }
    }
    return I;
}

double SeriesCoeff::value() const {
    double v = rat.get_d();
    if (surd != 0) v += surd.get_d() * std::sqrt(static_cast<double>(disc));
    return v;
}

std::string SeriesCoeff::exact() const {
    if (surd == 0) return rat.get_str();
    std::string tail = surd.get_str() + "*sqrt(" + std::to_string(disc) + ")";
    if (rat == 0) return tail;
    return rat.get_str() + (surd > 0 ? "+" : "") + tail;
}

PerturbSeries series_nondegenerate(int abs_l, int order) {
    check_series_args(abs_l, order);
    const int m = abs_l - 1;
    const int S = order + 4;
    CouplingTables tab(m, S);

    // Unperturbed: up_0 at |l|; up_N sits at 2N+|l|, low_K at 2K+|l|+2.
    std::vector<CoefVec<RatOps>> psi(order + 1, CoefVec<RatOps>(S));
    psi[0].up[0] = 1;
    std::vector<mpq_class> E(order + 1, 0);
    E[0] = abs_l;

    for (int k = 1; k <= order; ++k) {
        CoefVec<RatOps> w = apply_coupling(tab, psi[k - 1]);
        E[k] = w.up[0]; // = <up_0|V psi_{k-1}> / <up_0|up_0>
        for (int N = 0; N < S; ++N) {
            if (N > 0) {
                mpq_class num = w.up[N];
                for (int j = 1; j < k; ++j) num -= E[j] * psi[k - j].up[N];
                psi[k].up[N] = num / mpq_class(-2 * N);
            }
            mpq_class num = w.low[N];
            for (int j = 1; j < k; ++j) num -= E[j] * psi[k - j].low[N];
            psi[k].low[N] = num / mpq_class(-2 * N - 2);
        }
    }

    PerturbSeries s;
    s.abs_l = abs_l;
    s.level_N = 0;
    s.branch = Branch::Single;
    s.coeff.resize(order + 1);
    for (int k = 0; k <= order; ++k) s.coeff[k].rat = E[k];
    return s;
}

std::pair<PerturbSeries, PerturbSeries> series_degenerate(int level_N,
                                                          int abs_l,
                                                          int order) {
    check_series_args(abs_l, order);
    require(level_N >= 1 && level_N <= 40,
            "degenerate pairs need level_N >= 1 (level_N = 0 is the "
            "nondegenerate ground state)");
    const int m = abs_l - 1;
    const int N0 = level_N;
    const int S = N0 + order + 4;
    CouplingTables tab(m, S);

    // The pair {up_N0, low_{N0-1}} shares unperturbed value 2N0+|l|.
    // Restricted to it, the coupling is [[0, c_up], [c_low, 0]] in the
    // unnormalized coordinates, so it splits as +-sqrt(c_up c_low).
    const mpq_class c_up = tab.w_to_up[N0 - 1][1];
    const mpq_class c_low = tab.w_to_low[N0][1];
    mpq_class d = c_up * c_low;
    if (d.get_den() != 1 || d.get_num() != mpz_class(N0) * (N0 + abs_l))
        throw std::logic_error("splitting discriminant is not N(N+|l|)");
    unsigned long f = 1, D = 1;
    squarefree(d.get_num().get_ui(), f, D);

    auto run_branch = [&](int sign) {
        PerturbSeries s;
        s.abs_l = abs_l;
        s.level_N = N0;
        s.branch = sign > 0 ? Branch::Up : Branch::Down;
        s.coeff.resize(order + 1);
        s.coeff[0].rat = 2 * N0 + abs_l;

        const Surd va = make_surd(0, sign * mpq_class(static_cast<long>(f)), D);
        const Surd vb = -va;
        // First-order eigenvectors in (up_N0, low_{N0-1}) coordinates:
        // (1, v/c_up). They are orthogonal and share squared norm 2 h_up.
        CoefVec<SurdOps> A(S), B(S);
        A.up[N0] = make_surd(1, 0, 1);
        A.low[N0 - 1] = va / c_up;
        B.up[N0] = make_surd(1, 0, 1);
        B.low[N0 - 1] = vb / c_up;
        const mpq_class norm_ab = 2 * tab.h_up[N0];
        {
            Surd na = inner(tab, A, A);
            if (na.b != 0 || na.a != norm_ab)
                throw std::logic_error("first-order vector norm mismatch");
        }
        const CoefVec<SurdOps> Vb = apply_coupling(tab, B);

        std::vector<CoefVec<SurdOps>> psi(order + 1, CoefVec<SurdOps>(S));
        psi[0] = A;
        std::vector<Surd> E(order + 1), dk(order + 1);
        E[1] = va;

        for (int k = 1; k <= order; ++k) {
            CoefVec<SurdOps> w = apply_coupling(tab, psi[k - 1]);
            // <a|V psi_{k-1}> / <a|a>; the cross term <a|V b> vanishes.
            E[k] = (w.up[N0] * tab.h_up[N0] +
                    A.low[N0 - 1] * w.low[N0 - 1] * tab.h_low[N0 - 1]) /
                   norm_ab;

            // Component of psi_k outside the degenerate pair.
            CoefVec<SurdOps> q(S);
            for (int N = 0; N < S; ++N) {
                if (N != N0) {
                    Surd num = w.up[N];
                    for (int j = 1; j < k; ++j)
                        num = num - E[j] * psi[k - j].up[N];
                    q.up[N] = num / mpq_class(2 * (N0 - N));
                }
                if (N != N0 - 1) {
                    Surd num = w.low[N];
                    for (int j = 1; j < k; ++j)
                        num = num - E[j] * psi[k - j].low[N];
                    q.low[N] = num / mpq_class(2 * (N0 - 1 - N));
                }
            }

            // Cross-branch component, fixed by the <b| projection of the
            // order-(k+1) equation. Dropping it (seeding two independent
            // nondegenerate recursions instead) leaves an O(btilde^3)
            // error in the eigenvalues.
            Surd bVq = inner(tab, Vb, q) / norm_ab;
            Surd acc = bVq;
            for (int j = 2; j <= k; ++j) acc = acc - E[j] * dk[k + 1 - j];
            dk[k] = acc / (va - vb);

            psi[k] = q;
            psi[k].up[N0] += dk[k];
            psi[k].low[N0 - 1] += dk[k] * B.low[N0 - 1];
        }

        for (int k = 1; k <= order; ++k) {
            s.coeff[k].rat = E[k].a;
            s.coeff[k].surd = E[k].b;
            s.coeff[k].disc = E[k].b == 0 ? 1 : E[k].D;
        }
        return s;
    };

    return {run_branch(+1), run_branch(-1)};
}

double series_eval(const PerturbSeries& s, double btilde, int order) {
    require(std::isfinite(btilde), "btilde must be finite");
    int top = s.order();
    if (order >= 0) {
        require(order <= s.order(), "evaluation order exceeds stored series");
        top = order;
    }
    double acc = 0.0;
    for (int k = top; k >= 0; --k) acc = acc * btilde + s.coeff[k].value();
    return acc;
}

double radius_estimate(const PerturbSeries& s) {
    std::vector<std::pair<int, double>> nz;
    for (int k = 1; k <= s.order(); ++k)
        if (!s.coeff[k].is_zero())
            nz.emplace_back(k, std::fabs(s.coeff[k].value()));
    require(s.order() >= 10 && nz.size() >= 4,
            "series too short for a radius estimate (need order >= 10)");

    // Gap-aware consecutive-ratio roots |c_j/c_k|^{1/(k-j)}; the head of
    // the series is transient, so keep the top third and take its median.
    std::vector<double> rho;
    for (size_t i = 0; i + 1 < nz.size(); ++i) {
        double gap = nz[i + 1].first - nz[i].first;
        rho.push_back(std::pow(nz[i].second / nz[i + 1].second, 1.0 / gap));
    }
    size_t keep = std::max<size_t>(2, rho.size() / 3);
    std::vector<double> tail(rho.end() - keep, rho.end());
    std::sort(tail.begin(), tail.end());
    size_t mid = tail.size() / 2;
    return tail.size() % 2 ? tail[mid] : 0.5 * (tail[mid - 1] + tail[mid]);
}

} // namespace vclab
