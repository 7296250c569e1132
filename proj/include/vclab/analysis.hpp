#pragma once

#include <vector>

#include "vclab/sector.hpp"

namespace vclab {

// Where the bisection for the ground-state level crossing ran and what
// it found. The two curves are the exact l = 0 ground 2 sqrt(1-btilde)
// and the converged |l| = 1 sector ground.
struct CrossingReport {
    double btilde_star = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0; // final bracket, width <= xtol
    double gap_at_star = 0.0;                  // |e0(l=0) - e0(|l|=1)| there
    int evaluations = 0;
};

struct CrossingOpts {
    double lo = 0.85, hi = 0.99;
    double xtol = 1e-6;
    double sector_tol = 1e-10;
};

CrossingReport find_crossing(CrossingOpts opts = {});

// Which sector carries the global ground state at a given coupling.
struct GroundClassification {
    double btilde = 0.0;
    int ground_abs_l = 0;      // sector of the minimum
    bool degenerate_pair = false; // |l| >= 1 means a +-l doublet
    bool tie = false;          // within tie_tol of the runner-up sector
    double e_l0 = 0.0;         // exact l = 0 ground
    double e_best_pair = 0.0;  // best ground among |l| = 1..guard
    double margin = 0.0;       // |e_l0 - e_best_pair|
};

GroundClassification classify_ground(double btilde, double tie_tol = 1e-9,
                                     int guard_abs_l = 8);

// Spectral-group audit: with the levels sorted ascending (1-based rank),
// group N occupies ranks N(N-1)+1 .. N(N+1) and must lie inside
// [N sqrt(1-btilde), N sqrt(1+btilde)] up to tol.
struct BoundsGroup {
    int N = 0;
    double lower = 0.0, upper = 0.0;
    std::vector<double> values;
    double worst_violation = 0.0; // 0 when inside
    bool ok = true;
};

struct BoundsAudit {
    std::vector<BoundsGroup> groups;
    bool all_ok = true;
};

BoundsAudit audit_bounds(const std::vector<double>& sorted_spectrum,
                         double btilde, int n_max, double tol);

// One merged-spectrum line: a single sector eigenvalue, carrying
// multiplicity 2 when |l| >= 1 (the +-l doublet) and 1 for l = 0.
struct LevelLine {
    double value = 0.0;
    int abs_l = 0;
    int index_in_sector = 0;
    int multiplicity() const { return abs_l == 0 ? 1 : 2; }
};

// The `count` lowest levels of the full operator (multiplicities
// expanded), assembled from converged sector spectra. Sector inclusion
// is cut off by the form bound: the |l| ground is >= |l| sqrt(1-btilde).
std::vector<LevelLine> merged_levels(double btilde, int count,
                                     double sector_tol = 1e-10);

// Expanded values (each line repeated per its multiplicity), ascending.
std::vector<double> merged_values(const std::vector<LevelLine>& lines);

// Group consecutive sorted values whose neighbors differ by < gap_tol;
// returns (representative mean, cluster size) per cluster.
std::vector<std::pair<double, int>> cluster_values(
    const std::vector<double>& sorted, double gap_tol);

} // namespace vclab
