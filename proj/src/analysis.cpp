#include "vclab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vclab/laguerre.hpp"

namespace vclab {

namespace {

double sector_ground(int abs_l, double btilde, double tol) {
    ConvergeOpts co;
    co.tol = tol;
    return converged_sector_spectrum(abs_l, btilde, 1, co).values[0];
}

} // namespace

CrossingReport find_crossing(CrossingOpts opts) {
    require(opts.lo < opts.hi, "need lo < hi");
    require(opts.lo >= 0.0 && opts.hi < 1.0, "bracket must sit inside [0, 1)");
    require(opts.xtol > 0.0, "xtol must be > 0");

    int evals = 0;
    // The |l| = 1 doublet is the ground state below the crossing, so
    // this difference starts positive and goes negative as the l = 0
    // branch 2 sqrt(1-btilde) dives under it.
    auto gap = [&](double bt) {
        ++evals;
        return exact_l0_value(-1, 0, bt) -
               sector_ground(1, bt, opts.sector_tol);
    };

    double lo = opts.lo, hi = opts.hi;
    double glo = gap(lo), ghi = gap(hi);
    require(glo > 0.0 && ghi < 0.0,
            "bracket does not straddle the crossing (|l|=1 must win at lo, "
            "l=0 at hi)");

    while (hi - lo > opts.xtol) {
        double mid = 0.5 * (lo + hi);
        double gm = gap(mid);
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        (gm > 0.0 ? lo : hi) = mid;
    }

    CrossingReport r;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.btilde_star = 0.5 * (lo + hi);
    r.gap_at_star = std::fabs(gap(r.btilde_star));
    r.evaluations = evals;
    return r;
}

GroundClassification classify_ground(double btilde, double tie_tol,
                                     int guard_abs_l) {
    require(btilde >= 0.0 && btilde < 1.0, "need 0 <= btilde < 1");
    require(guard_abs_l >= 1, "need at least one paired sector to compare");

    GroundClassification c;
    c.btilde = btilde;
    c.e_l0 = exact_l0_value(-1, 0, btilde);

    int best_l = 1;
    double best = sector_ground(1, btilde, 1e-10);
    for (int l = 2; l <= guard_abs_l; ++l) {
        // The form bound |l| sqrt(1-btilde) already rules out high
        // sectors without diagonalizing them.
        if (l * std::sqrt(1.0 - btilde) > std::min(best, c.e_l0) + tie_tol)
            break;
        double g = sector_ground(l, btilde, 1e-10);
        if (g < best) {
            best = g;
            best_l = l;
        }
    }
    c.e_best_pair = best;
    c.margin = std::fabs(c.e_l0 - best);
    c.tie = c.margin <= tie_tol;
    c.ground_abs_l = (c.e_l0 <= best) ? 0 : best_l;
    c.degenerate_pair = c.ground_abs_l >= 1 && !c.tie;
    return c;
}

BoundsAudit audit_bounds(const std::vector<double>& sorted_spectrum,
                         double btilde, int n_max, double tol) {
    require(btilde >= 0.0 && btilde < 1.0, "need 0 <= btilde < 1");
    require(n_max >= 1, "need n_max >= 1");
    require(static_cast<int>(sorted_spectrum.size()) >= n_max * (n_max + 1),
            "spectrum too short for the requested group audit");
    require(std::is_sorted(sorted_spectrum.begin(), sorted_spectrum.end()),
            "spectrum must be sorted ascending");

    BoundsAudit audit;
    for (int N = 1; N <= n_max; ++N) {
        BoundsGroup g;
        g.N = N;
        g.lower = N * std::sqrt(1.0 - btilde);
        g.upper = N * std::sqrt(1.0 + btilde);
        // 1-based ranks N(N-1)+1 .. N(N+1).
        for (int r = N * (N - 1); r < N * (N + 1); ++r) {
            double v = sorted_spectrum[r];
            g.values.push_back(v);
            double viol = std::max(g.lower - tol - v, v - g.upper - tol);
            if (viol > 0.0) {
                g.ok = false;
                g.worst_violation = std::max(g.worst_violation, viol);
            }
        }
        audit.all_ok = audit.all_ok && g.ok;
        audit.groups.push_back(std::move(g));
    }
    return audit;
}

std::vector<LevelLine> merged_levels(double btilde, int count,
                                     double sector_tol) {
    require(count >= 1 && count <= 512, "need 1 <= count <= 512");
    require(btilde >= 0.0 && btilde < 1.0, "need 0 <= btilde < 1");

    std::vector<LevelLine> lines;
    auto kth_value = [&](int k) { // k-th lowest among expanded values so far
        std::vector<double> v = merged_values(lines);
        return static_cast<int>(v.size()) > k ? v[k]
                                              : std::numeric_limits<double>::infinity();
    };

    ConvergeOpts co;
    co.tol = sector_tol;
    for (int absl = 0;; ++absl) {
        // Form bound: sector |l| cannot contribute below |l| sqrt(1-btilde)
        // (and l = 0 not below sqrt(1-btilde)).
        double floor_l = std::max(1, absl) * std::sqrt(1.0 - btilde);
        if (floor_l > kth_value(count - 1)) break;
        require(absl <= 64, "merged spectrum needed more than 64 sectors");

        int per_sector = count;
        SectorSpectrum s = converged_sector_spectrum(absl, btilde, per_sector, co);
        for (int i = 0; i < per_sector; ++i)
            lines.push_back({s.values[i], absl, i});
    }

    std::sort(lines.begin(), lines.end(),
              [](const LevelLine& x, const LevelLine& y) {
                  return x.value < y.value;
              });
    // Trim to the lines actually needed for `count` expanded values.
    int expanded = 0;
    size_t keep = 0;
    while (keep < lines.size() && expanded < count)
        expanded += lines[keep++].multiplicity();
    lines.resize(keep);
    return lines;
}

std::vector<double> merged_values(const std::vector<LevelLine>& lines) {
    std::vector<double> v;
    for (const auto& ln : lines)
        for (int c = 0; c < ln.multiplicity(); ++c) v.push_back(ln.value);
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::pair<double, int>> cluster_values(
    const std::vector<double>& sorted, double gap_tol) {
    std::vector<std::pair<double, int>> out;
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i + 1;
        double sum = sorted[i];
        while (j < sorted.size() && sorted[j] - sorted[j - 1] < gap_tol) {
            sum += sorted[j];
            ++j;
        }
        out.emplace_back(sum / (j - i), static_cast<int>(j - i));
        i = j;
    }
    return out;
}

} // namespace vclab
