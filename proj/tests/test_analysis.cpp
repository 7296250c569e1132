#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vclab/analysis.hpp"
#include "vclab/common.hpp"

using namespace vclab;

TEST_SUITE_BEGIN("analysis");

TEST_CASE("ground-state crossing lands on the frozen coupling") {
    CrossingOpts opts;
    opts.xtol = 2e-5;
    opts.sector_tol = 1e-9;
    CrossingReport r = find_crossing(opts);

    // independent bisection of the same two curves
    CHECK(r.btilde_star == doctest::Approx(0.9183011510).epsilon(6e-5));
    CHECK(r.btilde_star > 0.90);
    CHECK(r.btilde_star < 0.95);
    CHECK(r.bracket_hi - r.bracket_lo <= opts.xtol * (1.0 + 1e-12));
    CHECK(r.bracket_lo <= r.btilde_star);
    CHECK(r.btilde_star <= r.bracket_hi);
    CHECK(r.gap_at_star < 1e-3);
    CHECK(r.evaluations >= 10);
}

TEST_CASE("crossing rejects bad or non-straddling brackets") {
    CrossingOpts bad;
    bad.lo = 0.5;
    bad.hi = 0.4;
    CHECK_THROWS_AS(find_crossing(bad), validation_error);

    CrossingOpts neg;
    neg.xtol = 0.0;
    CHECK_THROWS_AS(find_crossing(neg), validation_error);

    // Both endpoints sit on the same side of the crossing here.
    CrossingOpts off;
    off.lo = 0.1;
    off.hi = 0.3;
    off.xtol = 1e-3;
    CHECK_THROWS_AS(find_crossing(off), validation_error);
}

TEST_CASE("ground classification on both sides of the crossing") {
    GroundClassification below = classify_ground(0.5);
    CHECK(below.ground_abs_l == 1);
    CHECK(below.degenerate_pair);
    CHECK(!below.tie);
    CHECK(below.e_l0 == doctest::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-12));
    CHECK(below.e_best_pair == doctest::Approx(0.92926663240230).epsilon(1e-8));
    CHECK(below.margin > 0.4);

    GroundClassification above = classify_ground(0.97);
    CHECK(above.ground_abs_l == 0);
    CHECK(!above.degenerate_pair);
    CHECK(!above.tie);
    CHECK(above.e_l0 < above.e_best_pair);
}

TEST_CASE("classification flags a tie near the crossing") {
    GroundClassification c = classify_ground(0.9183, 1e-3);
    CHECK(c.tie);
    CHECK(!c.degenerate_pair);
    CHECK(c.margin <= 1e-3);
}

TEST_CASE("classification argument validation") {
    CHECK_THROWS_AS(classify_ground(1.0), validation_error);
    CHECK_THROWS_AS(classify_ground(-0.2), validation_error);
    CHECK_THROWS_AS(classify_ground(0.5, 1e-9, 0), validation_error);
}

TEST_CASE("group bounds audit passes on a merged sector spectrum") {
    auto vals = merged_values(merged_levels(0.5, 12, 1e-10));
    REQUIRE(vals.size() >= 12);

    BoundsAudit audit = audit_bounds(vals, 0.5, 3, 1e-8);
    CHECK(audit.all_ok);
    REQUIRE(audit.groups.size() == 3);
    for (int N = 1; N <= 3; ++N) {
        const BoundsGroup& g = audit.groups[N - 1];
        CHECK(g.N == N);
        CHECK(g.ok);
        CHECK(g.worst_violation == 0.0);
        CHECK(static_cast<int>(g.values.size()) == 2 * N);
        CHECK(g.lower == doctest::Approx(N * std::sqrt(0.5)).epsilon(1e-14));
        CHECK(g.upper == doctest::Approx(N * std::sqrt(1.5)).epsilon(1e-14));
        for (double v : g.values) {
            CHECK(v >= g.lower - 1e-8);
            CHECK(v <= g.upper + 1e-8);
        }
    }
}

TEST_CASE("bounds audit flags a corrupted level") {
    auto vals = merged_values(merged_levels(0.5, 12, 1e-10));
    REQUIRE(vals.size() >= 12);
    vals[0] = 0.5; // below the group-1 floor sqrt(0.5), still sorted
    BoundsAudit audit = audit_bounds(vals, 0.5, 3, 1e-8);
    CHECK(!audit.all_ok);
    CHECK(!audit.groups[0].ok);
    CHECK(audit.groups[0].worst_violation ==
          doctest::Approx(std::sqrt(0.5) - 0.5 - 1e-8).epsilon(1e-9));
    CHECK(audit.groups[1].ok);
}

TEST_CASE("bounds audit input validation") {
    std::vector<double> short_spec = {1.0, 2.0};
    CHECK_THROWS_AS(audit_bounds(short_spec, 0.5, 2, 1e-8), validation_error);
    std::vector<double> unsorted = {1.0, 0.9, 2.0, 2.1, 2.2, 2.3};
    CHECK_THROWS_AS(audit_bounds(unsorted, 0.5, 1, 1e-8), validation_error);
    std::vector<double> ok(12, 1.0);
    CHECK_THROWS_AS(audit_bounds(ok, 1.5, 3, 1e-8), validation_error);
    CHECK_THROWS_AS(audit_bounds(ok, 0.5, 0, 1e-8), validation_error);
}

TEST_CASE("merged levels carry sector labels and multiplicities") {
    auto lines = merged_levels(0.5, 10, 1e-10);
    REQUIRE(!lines.empty());

    // ground line: the |l| = 1 doublet
    CHECK(lines[0].abs_l == 1);
    CHECK(lines[0].multiplicity() == 2);
    CHECK(lines[0].index_in_sector == 0);
    CHECK(lines[0].value == doctest::Approx(0.92926663240230).epsilon(5e-9));

    // the exact l = 0 ground is in there as a single line
    bool found_l0 = false;
    for (const auto& ln : lines)
        if (ln.abs_l == 0 &&
            std::fabs(ln.value - 2.0 * std::sqrt(0.5)) < 1e-9) {
            found_l0 = true;
            CHECK(ln.multiplicity() == 1);
        }
    CHECK(found_l0);

    auto vals = merged_values(lines);
    // whole lines are kept, so a trailing doublet may add one extra
    CHECK(vals.size() >= 10);
    CHECK(vals.size() <= 11);
    CHECK(std::is_sorted(vals.begin(), vals.end()));
    CHECK(vals[0] == doctest::Approx(0.92926663240230).epsilon(5e-9));
    CHECK(vals[1] == doctest::Approx(0.92926663240230).epsilon(5e-9));
    CHECK(vals[2] == doctest::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("accidental l = 0 coincidence at btilde = 0.6") {
    // (2N+2) sqrt(1-x) at N = 1 meets 2 sqrt(1+x) at x = 0.6: two
    // distinct l = 0 lines share the value 4 sqrt(0.4). They sit at
    // expanded ranks 10 and 11, so ask for a few more levels.
    auto lines = merged_levels(0.6, 14, 1e-10);
    int hits = 0;
    for (const auto& ln : lines)
        if (ln.abs_l == 0 &&
            std::fabs(ln.value - 4.0 * std::sqrt(0.4)) < 1e-9)
            ++hits;
    CHECK(hits == 2);
}

TEST_CASE("merged level validation") {
    CHECK_THROWS_AS(merged_levels(0.5, 0), validation_error);
    CHECK_THROWS_AS(merged_levels(0.5, 1000), validation_error);
    CHECK_THROWS_AS(merged_levels(1.2, 10), validation_error);
}

TEST_CASE("value clustering") {
    std::vector<double> v = {1.0, 1.01, 1.02, 2.0, 3.5, 3.55};
    auto c = cluster_values(v, 0.3);
    REQUIRE(c.size() == 3);
    CHECK(c[0].second == 3);
    CHECK(c[0].first == doctest::Approx(1.01).epsilon(1e-12));
    CHECK(c[1].second == 1);
    CHECK(c[1].first == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c[2].second == 2);
    CHECK(c[2].first == doctest::Approx(3.525).epsilon(1e-12));

    CHECK(cluster_values({}, 0.5).empty());
}

TEST_SUITE_END();
