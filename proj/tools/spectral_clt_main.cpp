#include "spectral_clt/commands.hpp"
#include "spectral_clt/csv.hpp"
#include "spectral_clt/errors.hpp"

#include <CLI11.hpp>
#include <iostream>

using namespace spectral_clt;

namespace {

Renormalization parse_which(const std::string& s) {
    if (s == "true" || s == "true_p") return Renormalization::TrueP;
    if (s == "empirical") return Renormalization::Empirical;
    throw validation_error("--which must be true or empirical");
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Asymptotic mean/covariance of linear spectral statistics of "
                 "block-structured random matrices, with Monte Carlo validation"};
    app.require_subcommand(1);

    // theory
    TheoryConfig tc;
    auto* theory = app.add_subcommand("theory", "Asymptotic mean, variance and centering for test functions");
    theory->add_option("--model", tc.model_path, "model JSON file")->required();
    theory->add_option("--f", tc.fspecs, "test function, e.g. poly:0,0,1 or exp")->required();
    theory->add_option("--nodes", tc.nodes, "contour node count (power of two, >= 64)");
    theory->add_option("--out", tc.format, "output format: csv or json");
    theory->add_option("--output", tc.output, "output path (default stdout)");
    theory->add_option("--dump-kernels", tc.dump_kernels, "write the kernel grid CSV here");

    // lsd
    LsdConfig lc;
    auto* lsd = app.add_subcommand("lsd", "Limiting spectral density on a grid");
    lsd->add_option("--model", lc.model_path, "model JSON file")->required();
    lsd->add_option("--points", lc.points, "grid size");
    lsd->add_option("--eta", lc.eta, "imaginary offset for the density");
    lsd->add_option("--pad", lc.pad, "padding beyond the spectral edge");
    lsd->add_option("--out", lc.out, "output path (default stdout)");

    // simulate
    SimulateConfig sc;
    std::string sim_which = "true";
    auto* sim = app.add_subcommand("simulate", "Monte Carlo linear spectral statistics of an SBM");
    sim->add_option("--model", sc.model_path, "model JSON file with ptilde")->required();
    sim->add_option("--f", sc.fspec, "test function");
    sim->add_option("--nr", sc.nr, "replicate count");
    sim->add_option("--seed", sc.seed, "master seed");
    sim->add_option("--which", sim_which, "renormalization: true or empirical");
    sim->add_option("--out", sc.out, "samples CSV path (default stdout)");

    // compare
    CompareConfig cc;
    auto* cmp = app.add_subcommand("compare", "Join a theory run with a samples file");
    cmp->add_option("--theory", cc.theory_path, "theory CSV path")->required();
    cmp->add_option("--samples", cc.samples_path, "samples CSV path")->required();
    cmp->add_option("--out", cc.out, "report path (default stdout)");
    cmp->add_option("--qq-out", cc.qq_out, "write standardized qq points here");

    // grid
    GridConfig gc;
    std::string grid_which = "true";
    auto* grid = app.add_subcommand("grid", "Sweep planted-partition models over (p,q)");
    grid->add_option("--sizes", gc.sizes, "community sizes")->required()->delimiter(',');
    grid->add_option("--p", gc.pvals, "within-community probabilities")->required()->delimiter(',');
    grid->add_option("--q", gc.qvals, "across-community probabilities")->required()->delimiter(',');
    grid->add_option("--f", gc.fspec, "test function");
    grid->add_option("--nr", gc.nr, "replicates per cell");
    grid->add_option("--seed", gc.seed, "master seed");
    grid->add_option("--nodes", gc.nodes, "contour node count");
    grid->add_option("--which", grid_which, "renormalization: true or empirical");
    grid->add_option("--out", gc.out, "grid CSV path (default stdout)");

    // qq
    QqConfig qc;
    auto* qq = app.add_subcommand("qq", "Quantile pairs for one or two sample files");
    qq->add_option("--samples", qc.samples_a, "samples CSV path")->required();
    qq->add_option("--samples-b", qc.samples_b, "second samples CSV (two-sample mode)");
    qq->add_option("--out", qc.out, "qq CSV path (default stdout)");

    // oracle
    OracleConfig oc;
    auto* orc = app.add_subcommand("oracle", "Exact finite-n trace moment");
    orc->add_option("--model", oc.model_path, "model JSON file")->required();
    orc->add_option("--n", oc.n, "matrix size")->required();
    orc->add_option("--k", oc.k, "moment order (1..4)")->required();
    orc->add_option("--out", oc.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (theory->parsed()) {
        TheoryResult r = run_theory(tc);
        write_lines(tc.output, render_theory(r, tc.format));
    } else if (lsd->parsed()) {
        LsdResult r = run_lsd(lc);
        write_lines(lc.out, render_lsd(r));
    } else if (sim->parsed()) {
        sc.which = parse_which(sim_which);
        LssSampleSet set = run_simulate(sc);
        write_lines(sc.out, render_samples(set));
    } else if (cmp->parsed()) {
        CompareResult r = run_compare(cc);
        write_lines(cc.out, render_compare(r));
    } else if (grid->parsed()) {
        gc.which = parse_which(grid_which);
        GridResult r = run_grid(gc);
        write_lines(gc.out, render_grid(r, gc));
    } else if (qq->parsed()) {
        QqResult r = run_qq(qc);
        write_lines(qc.out, render_qq(r));
    } else if (orc->parsed()) {
        OracleResult r = run_oracle(oc);
        write_lines(oc.out, render_oracle(r));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
