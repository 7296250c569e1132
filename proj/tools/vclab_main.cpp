#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "vclab/analysis.hpp"
#include "vclab/fdgrid.hpp"
#include "vclab/laguerre.hpp"
#include "vclab/model.hpp"
#include "vclab/perturbation.hpp"
#include "vclab/runio.hpp"
#include "vclab/sector.hpp"

namespace {

using namespace vclab;

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::Single: return "single";
        case Branch::Up: return "up";
        case Branch::Down: return "down";
    }
    return "?";
}

// Emit one series (coefficients, radius estimate when defined, and
// truncated evaluations over the coupling grid).
void emit_series_rows(OutputTable& t, const PerturbSeries& s,
                      const std::vector<double>& grid) {
    const std::string al = std::to_string(s.abs_l);
    const std::string ln = std::to_string(s.level_N);
    const std::string br = branch_name(s.branch);
    for (int k = 0; k <= s.order(); ++k)
        t.row({"coeff", al, ln, br, std::to_string(k), s.coeff[k].exact(),
               fmt_double(s.coeff[k].value())});
    if (s.order() >= 10) {
        t.row({"radius", al, ln, br, "", "", fmt_double(radius_estimate(s))});
    }
    for (double bt : grid)
        t.row({"eval", al, ln, br, fmt_double(bt), "",
               fmt_double(series_eval(s, bt))});
}

struct CommonOut {
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOut& o) {
    cmd->add_option("--format", o.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical spectral laboratory for the leading-order "
                 "vibronic-coupling Hamiltonian of a linear molecule"};
    app.set_config("--config", "",
                   "key=value config file (dotted keys reach subcommands, "
                   "e.g. sweep.grid-n=241)");
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads,
                   "Worker threads for dense kernels")
        ->envname("VCLAB_THREADS")
        ->check(CLI::Range(1, 64));

    // ---- exact-l0 ---------------------------------------------------
    auto* c_exact = app.add_subcommand(
        "exact-l0", "Closed-form l=0 levels (2N+2)sqrt(1 -+ btilde)");
    double ex_bt = 0.0;
    int ex_nmax = 8;
    CommonOut ex_o;
    c_exact->add_option("--btilde", ex_bt, "Coupling ratio b/a in [0, 1)")
        ->required();
    c_exact->add_option("--nmax", ex_nmax, "Largest radial index")
        ->capture_default_str();
    add_common(c_exact, ex_o);

    // ---- series -----------------------------------------------------
    auto* c_series = app.add_subcommand(
        "series", "Exact perturbation series in the coupling ratio");
    int se_absl = 0, se_level = -1, se_order = 0;
    std::string se_grid = "0:0.98:0.02";
    CommonOut se_o;
    c_series->add_option("--abs-l", se_absl,
                         "Sector |l| (0: the standard set |l|=1..8 plus the "
                         "four lowest degenerate pairs)")
        ->check(CLI::Range(0, 64))
        ->capture_default_str();
    c_series->add_option("--level-n", se_level,
                         "Radial level: 0 = sector ground (nondegenerate), "
                         ">=1 = degenerate pair (needs --abs-l)")
        ->check(CLI::Range(-1, 40))
        ->capture_default_str();
    c_series->add_option("--order", se_order,
                         "Series order (0: 28 for ground series, 12 for "
                         "degenerate pairs)")
        ->check(CLI::Range(0, 40))
        ->capture_default_str();
    c_series->add_option("--btilde-grid", se_grid,
                         "Evaluation grid lo:hi:step")
        ->capture_default_str();
    add_common(c_series, se_o);

    // ---- sweep ------------------------------------------------------
    auto* c_sweep = app.add_subcommand(
        "sweep", "Finite-difference level curves over a coupling grid");
    std::string sw_grid = "0:0.98:0.01";
    int sw_k = 17, sw_n = 191, sw_restarts = 80;
    double sw_L = 8.0, sw_tol = 1e-8;
    CommonOut sw_o;
    c_sweep->add_option("--btilde-grid", sw_grid, "Coupling grid lo:hi:step")
        ->capture_default_str();
    c_sweep->add_option("-k,--levels", sw_k, "Levels per point")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    c_sweep->add_option("--grid-n", sw_n, "Interior grid points per axis")
        ->check(CLI::Range(16, 1024))
        ->capture_default_str();
    c_sweep->add_option("--box-L", sw_L, "Box half-width")
        ->capture_default_str();
    c_sweep->add_option("--tol", sw_tol, "Eigenvalue residual tolerance")
        ->capture_default_str();
    c_sweep->add_option("--max-restarts", sw_restarts,
                        "Iteration budget per point")
        ->check(CLI::Range(0, 1000))
        ->capture_default_str();
    add_common(c_sweep, sw_o);

    // ---- crossing ---------------------------------------------------
    auto* c_cross = app.add_subcommand(
        "crossing", "Locate the ground-state level crossing in btilde");
    CrossingOpts cr;
    CommonOut cr_o;
    c_cross->add_option("--lo", cr.lo, "Bracket start")->capture_default_str();
    c_cross->add_option("--hi", cr.hi, "Bracket end")->capture_default_str();
    c_cross->add_option("--xtol", cr.xtol, "Bracket width target")
        ->capture_default_str();
    c_cross->add_option("--sector-tol", cr.sector_tol,
                        "Sector eigenvalue tolerance")
        ->capture_default_str();
    add_common(c_cross, cr_o);

    // ---- classify ---------------------------------------------------
    auto* c_class = app.add_subcommand(
        "classify", "Which sector carries the ground state");
    double cl_bt = -1.0;
    std::string cl_grid;
    double cl_tie = 1e-9;
    CommonOut cl_o;
    auto* cl_bt_opt =
        c_class->add_option("--btilde", cl_bt, "Single coupling value");
    auto* cl_grid_opt = c_class->add_option("--btilde-grid", cl_grid,
                                            "Coupling grid lo:hi:step");
    c_class->add_option("--tie-tol", cl_tie, "Margin treated as a tie")
        ->capture_default_str();
    cl_bt_opt->excludes(cl_grid_opt);
    add_common(c_class, cl_o);

    // ---- bounds -----------------------------------------------------
    auto* c_bounds = app.add_subcommand(
        "bounds", "Audit the square-root bracketing of spectral groups");
    double bo_bt = 0.0, bo_tol = -1.0, bo_L = 8.0;
    int bo_nmax = 4, bo_n = 191, bo_restarts = 80;
    std::string bo_source = "sector";
    CommonOut bo_o;
    c_bounds->add_option("--btilde", bo_bt, "Coupling ratio")->required();
    c_bounds->add_option("--nmax", bo_nmax, "Deepest group to audit")
        ->check(CLI::Range(1, 12))
        ->capture_default_str();
    c_bounds->add_option("--source", bo_source,
                         "Spectrum source: sector or fd")
        ->check(CLI::IsMember({"sector", "fd"}))
        ->capture_default_str();
    c_bounds->add_option("--tol", bo_tol,
                         "Audit slack (default 1e-8 sector, 2e-3 fd)");
    c_bounds->add_option("--grid-n", bo_n, "fd source: grid points per axis")
        ->check(CLI::Range(16, 1024))
        ->capture_default_str();
    c_bounds->add_option("--box-L", bo_L, "fd source: box half-width")
        ->capture_default_str();
    c_bounds->add_option("--max-restarts", bo_restarts,
                         "fd source: iteration budget")
        ->check(CLI::Range(0, 1000))
        ->capture_default_str();
    add_common(c_bounds, bo_o);

    // ---- matrixform -------------------------------------------------
    auto* c_mf = app.add_subcommand(
        "matrixform", "Exact solutions of the quartic matrix-potential "
                      "compatibility system");
    CommonOut mf_o;
    add_common(c_mf, mf_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Eigen::setNbThreads(threads);

    try {
        if (c_exact->parsed()) {
            require(ex_bt >= 0.0 && ex_bt < 1.0, "need 0 <= btilde < 1");
            RunConfig cfg;
            cfg.command = "exact-l0";
            cfg.set("btilde", ex_bt);
            cfg.set("nmax", ex_nmax);
            cfg.set("threads", threads);
            OutputTable t;
            t.header = {"branch", "N", "value"};
            for (const ExactLevel& lv : exact_l0_levels(ex_bt, ex_nmax))
                t.row({lv.sign > 0 ? "plus" : "minus", std::to_string(lv.N),
                       fmt_double(lv.value)});
            emit_table(ex_o.out, ex_o.format, cfg, t);
        } else if (c_series->parsed()) {
            std::vector<double> grid = parse_grid(se_grid);
            RunConfig cfg;
            cfg.command = "series";
            cfg.set("abs-l", se_absl);
            cfg.set("level-n", se_level);
            cfg.set("order", se_order);
            cfg.set("btilde-grid", se_grid);
            cfg.set("threads", threads);
            OutputTable t;
            t.header = {"type", "abs_l", "level_n", "branch", "arg",
                        "exact", "value"};
            auto add_nondeg = [&](int al, int order) {
                emit_series_rows(t, series_nondegenerate(al, order), grid);
            };
            auto add_deg = [&](int N, int al, int order) {
                auto [up, down] = series_degenerate(N, al, order);
                emit_series_rows(t, up, grid);
                emit_series_rows(t, down, grid);
            };
            if (se_absl == 0) {
                require(se_level <= 0,
                        "--level-n needs a concrete --abs-l sector");
                for (int al = 1; al <= 8; ++al)
                    add_nondeg(al, se_order > 0 ? se_order : 28);
                for (int N : {1, 2})
                    for (int al : {1, 2})
                        add_deg(N, al, se_order > 0 ? se_order : 12);
            } else if (se_level <= 0) {
                add_nondeg(se_absl, se_order > 0 ? se_order : 28);
            } else {
                add_deg(se_level, se_absl, se_order > 0 ? se_order : 12);
            }
            emit_table(se_o.out, se_o.format, cfg, t);
        } else if (c_sweep->parsed()) {
            std::vector<double> grid = parse_grid(sw_grid);
            for (double bt : grid)
                require(bt >= 0.0 && bt < 1.0,
                        "coupling grid must stay inside [0, 1)");
            RunConfig cfg;
            cfg.command = "sweep";
            cfg.set("btilde-grid", sw_grid);
            cfg.set("levels", sw_k);
            cfg.set("grid-n", sw_n);
            cfg.set("box-L", sw_L);
            cfg.set("tol", sw_tol);
            cfg.set("threads", threads);
            OutputTable t;
            t.header = {"btilde", "index", "value", "residual", "error"};
            GridSpec g{sw_L, sw_n};
            FdSolveOpts so;
            so.max_restarts = sw_restarts;
            for (const SweepPoint& pt : fd_sweep(grid, g, sw_k, sw_tol, so)) {
                if (!pt.ok()) {
                    t.row({fmt_double(pt.btilde), "-1", "", "", pt.error});
                    continue;
                }
                for (size_t i = 0; i < pt.values.size(); ++i)
                    t.row({fmt_double(pt.btilde), std::to_string(i),
                           fmt_double(pt.values[i]),
                           fmt_double(pt.residuals[i]), ""});
            }
            emit_table(sw_o.out, sw_o.format, cfg, t);
        } else if (c_cross->parsed()) {
            RunConfig cfg;
            cfg.command = "crossing";
            cfg.set("lo", cr.lo);
            cfg.set("hi", cr.hi);
            cfg.set("xtol", cr.xtol);
            cfg.set("sector-tol", cr.sector_tol);
            cfg.set("threads", threads);
            CrossingReport r = find_crossing(cr);
            OutputTable t;
            t.header = {"btilde_star", "bracket_lo", "bracket_hi",
                        "gap_at_star", "evaluations"};
            t.row({fmt_double(r.btilde_star), fmt_double(r.bracket_lo),
                   fmt_double(r.bracket_hi), fmt_double(r.gap_at_star),
                   std::to_string(r.evaluations)});
            emit_table(cr_o.out, cr_o.format, cfg, t);
        } else if (c_class->parsed()) {
            std::vector<double> grid;
            if (!cl_grid.empty())
                grid = parse_grid(cl_grid);
            else {
                require(cl_bt_opt->count() > 0,
                        "classify needs --btilde or --btilde-grid");
                grid.push_back(cl_bt);
            }
            RunConfig cfg;
            cfg.command = "classify";
            cfg.set("btilde-grid", cl_grid.empty() ? fmt_double(cl_bt)
                                                   : cl_grid);
            cfg.set("tie-tol", cl_tie);
            cfg.set("threads", threads);
            OutputTable t;
            t.header = {"btilde", "ground_abs_l", "kind", "e_l0",
                        "e_best_pair", "margin"};
            for (double bt : grid) {
                GroundClassification c = classify_ground(bt, cl_tie);
                t.row({fmt_double(bt), std::to_string(c.ground_abs_l),
                       c.tie ? "tie" : (c.degenerate_pair ? "pair" : "single"),
                       fmt_double(c.e_l0), fmt_double(c.e_best_pair),
                       fmt_double(c.margin)});
            }
            emit_table(cl_o.out, cl_o.format, cfg, t);
        } else if (c_bounds->parsed()) {
            double tol = bo_tol > 0 ? bo_tol
                                    : (bo_source == "sector" ? 1e-8 : 2e-3);
            int need = bo_nmax * (bo_nmax + 1);
            RunConfig cfg;
            cfg.command = "bounds";
            cfg.set("btilde", bo_bt);
            cfg.set("nmax", bo_nmax);
            cfg.set("source", bo_source);
            cfg.set("tol", tol);
            cfg.set("threads", threads);
            std::vector<double> spectrum;
            if (bo_source == "sector") {
                spectrum = merged_values(merged_levels(bo_bt, need));
            } else {
                require(need <= 64, "fd source supports nmax <= 7");
                cfg.set("grid-n", bo_n);
                cfg.set("box-L", bo_L);
                GridOperator op = assemble_grid(bo_bt, GridSpec{bo_L, bo_n});
                FdSolveOpts so;
                so.max_restarts = bo_restarts;
                spectrum = fd_lowest(op, need, 1e-8, so).values;
            }
            BoundsAudit audit = audit_bounds(spectrum, bo_bt, bo_nmax, tol);
            cfg.set("all_ok", audit.all_ok ? "true" : "false");
            OutputTable t;
            t.header = {"group", "rank", "value", "lower", "upper", "inside"};
            for (const BoundsGroup& gr : audit.groups) {
                int rank = gr.N * (gr.N - 1) + 1;
                for (double v : gr.values) {
                    bool inside = v >= gr.lower - tol && v <= gr.upper + tol;
                    t.row({std::to_string(gr.N), std::to_string(rank),
                           fmt_double(v), fmt_double(gr.lower),
                           fmt_double(gr.upper), inside ? "yes" : "no"});
                    ++rank;
                }
            }
            emit_table(bo_o.out, bo_o.format, cfg, t);
        } else if (c_mf->parsed()) {
            RunConfig cfg;
            cfg.command = "matrixform";
            cfg.set("threads", threads);
            OutputTable t;
            t.header = {"index", "b11", "b12", "c11", "c12", "res1", "res2",
                        "res3", "res4"};
            auto sols = matrixform_solutions();
            for (size_t i = 0; i < sols.size(); ++i) {
                auto res = sols[i].residuals();
                t.row({std::to_string(i), sols[i].b11.get_str(),
                       sols[i].b12.get_str(), sols[i].c11.get_str(),
                       sols[i].c12.get_str(), res[0].get_str(),
                       res[1].get_str(), res[2].get_str(), res[3].get_str()});
            }
            emit_table(mf_o.out, mf_o.format, cfg, t);
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
