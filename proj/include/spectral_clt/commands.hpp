#pragma once

#include "spectral_clt/block_model.hpp"
#include "spectral_clt/simulate.hpp"
#include "spectral_clt/stats.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spectral_clt {

// Command-level entry points used by both the CLI binary and the test
// suites; every run function is deterministic given its config (thread
// count never changes any output byte).

struct TheoryRow {
    std::string fspec;
    double mean = 0.0;       // asymptotic mean of the centered statistic
    double variance = 0.0;   // asymptotic variance
    double centering = 0.0;  // per-eigenvalue centering: integral of f against the LSD
};

struct TheoryResult {
    std::vector<TheoryRow> rows;
    int nodes_used = 0;
    double radius = 0.0;
};

struct TheoryConfig {
    std::string model_path;
    std::vector<std::string> fspecs;
    int nodes = 512;
    std::string format = "csv";  // csv | json
    std::string output;          // empty: stdout
    std::string dump_kernels;    // optional kernel grid CSV path
};

TheoryResult run_theory(const TheoryConfig& cfg);
std::vector<std::string> render_theory(const TheoryResult& r, const std::string& format);

struct SimulateConfig {
    std::string model_path;
    std::string fspec = "poly:0,0,1";
    int nr = 100;
    std::uint64_t seed = 1;
    Renormalization which = Renormalization::TrueP;
    std::string out;
};

LssSampleSet run_simulate(const SimulateConfig& cfg);
std::vector<std::string> render_samples(const LssSampleSet& set);

struct SamplesFile {
    std::map<std::string, std::string> meta;
    std::vector<double> values;
    int n = 0;
    std::string fspec;
};

SamplesFile read_samples(const std::string& path);
std::vector<TheoryRow> read_theory(const std::string& path);

struct CompareConfig {
    std::string theory_path;
    std::string samples_path;
    std::string out;
    std::string qq_out;  // optional
};

struct CompareResult {
    std::string fspec;
    int n = 0;
    SummaryStats summary;
};

CompareResult run_compare(const CompareConfig& cfg);
std::vector<std::string> render_compare(const CompareResult& r);

struct GridConfig {
    std::vector<int> sizes;
    std::vector<double> pvals;
    std::vector<double> qvals;
    std::string fspec = "poly:0,0,1";
    int nr = 100;
    std::uint64_t seed = 1;
    int nodes = 512;
    Renormalization which = Renormalization::TrueP;
    std::string out;
};

struct GridCell {
    double p = 0.0;
    double q = 0.0;
    double theory_mean = 0.0;  // asymptotic mean of the uncentered statistic
    double emp_mean = 0.0;
    double theory_var = 0.0;
    double emp_var = 0.0;
    double abs_diff_mean = 0.0;
    double abs_diff_var = 0.0;
};

struct GridResult {
    std::vector<GridCell> cells;  // row-major over (p, q)
    double max_abs_diff_mean = 0.0;
    double max_abs_diff_var = 0.0;
};

GridResult run_grid(const GridConfig& cfg);
std::vector<std::string> render_grid(const GridResult& r, const GridConfig& cfg);

struct QqConfig {
    std::string samples_a;
    std::string samples_b;  // empty: one-sample mode against normal quantiles
    std::string out;
};

struct QqResult {
    std::vector<QQPoint> points;
    bool two_sample = false;
    double ks = 0.0;             // two-sample mode only
    double ks_critical = 0.0;
    double max_abs_deviation = 0.0;  // from the identity line, standardized units
};

QqResult run_qq(const QqConfig& cfg);
std::vector<std::string> render_qq(const QqResult& r);

struct LsdConfig {
    std::string model_path;
    int points = 200;
    double eta = 1e-5;
    double pad = 0.5;
    std::string out;
};

struct LsdResult {
    double edge = 0.0;
    std::vector<double> x;
    std::vector<double> density;
};

LsdResult run_lsd(const LsdConfig& cfg);
std::vector<std::string> render_lsd(const LsdResult& r);

struct OracleConfig {
    std::string model_path;
    int n = 0;
    int k = 2;
    std::string out;
};

struct OracleResult {
    int n = 0;
    int k = 0;
    double value = 0.0;
};

OracleResult run_oracle(const OracleConfig& cfg);
std::vector<std::string> render_oracle(const OracleResult& r);

} // namespace spectral_clt
