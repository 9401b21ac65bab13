#include "spectral_clt/commands.hpp"

#include "spectral_clt/contour.hpp"
#include "spectral_clt/csv.hpp"
#include "spectral_clt/errors.hpp"
#include "spectral_clt/model_io.hpp"
#include "spectral_clt/oracle.hpp"
#include "spectral_clt/qve.hpp"
#include "spectral_clt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spectral_clt {

namespace {

std::string which_name(Renormalization w) {
    return w == Renormalization::TrueP ? "true_p" : "empirical";
}

void dump_kernel_grid(LssCalculator& calc, const std::string& path) {
    const ContourQuadrature& c = calc.contour();
    std::vector<std::string> lines;
    lines.reserve(static_cast<std::size_t>(c.N) * c.N + 2);
    lines.push_back(kCsvVersionLine);
    lines.push_back("z1_re,z1_im,z2_re,z2_im,mean_re,mean_im,cov_re,cov_im");
    for (int j1 = 0; j1 < c.N; ++j1) {
        Complex z1 = c.nodes[j1];
        Complex mean = calc.mean_kernel_at(j1);
        for (int j2 = 0; j2 < c.N; ++j2) {
            Complex z2 = c.nodes[j2];
            Complex cov = calc.cov_kernel_at(j1, j2);
            lines.push_back(fmt_double(z1.real()) + "," + fmt_double(z1.imag()) + "," +
                            fmt_double(z2.real()) + "," + fmt_double(z2.imag()) + "," +
                            fmt_double(mean.real()) + "," + fmt_double(mean.imag()) + "," +
                            fmt_double(cov.real()) + "," + fmt_double(cov.imag()));
        }
    }
    write_lines(path, lines);
}

} // namespace

TheoryResult run_theory(const TheoryConfig& cfg) {
    if (cfg.fspecs.empty())
        throw validation_error("theory: at least one test function required");
    LoadedModel lm = load_model(cfg.model_path);
    LssCalculator calc(lm.params, cfg.nodes);
    TheoryResult res;
    for (const auto& fspec : cfg.fspecs) {
        TestFunction f = parse_testfn(fspec);
        TheoryRow row;
        row.fspec = fspec;
        row.mean = calc.mean(f);
        row.variance = calc.cov(f, f);
        row.centering = calc.lsd(f);
        res.rows.push_back(row);
    }
    res.nodes_used = calc.nodes_used();
    res.radius = calc.radius();
    if (!cfg.dump_kernels.empty())
        dump_kernel_grid(calc, cfg.dump_kernels);
    return res;
}

std::vector<std::string> render_theory(const TheoryResult& r, const std::string& format) {
    std::vector<std::string> lines;
    if (format == "json") {
        std::ostringstream os;
        os << "{\"version\":\"spectral-clt v1\",\"nodes_used\":" << r.nodes_used
           << ",\"radius\":" << fmt_double(r.radius) << ",\"rows\":[";
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const TheoryRow& row = r.rows[i];
            if (i) os << ",";
            os << "{\"f\":\"" << row.fspec << "\",\"mean\":" << fmt_double(row.mean)
               << ",\"variance\":" << fmt_double(row.variance)
               << ",\"centering\":" << fmt_double(row.centering) << "}";
        }
        os << "]}";
        lines.push_back(os.str());
        return lines;
    }
    if (format != "csv")
        throw validation_error("theory: format must be csv or json");
    lines.push_back(kCsvVersionLine);
    lines.push_back("f,mean,variance,centering,nodes_used,radius");
    for (const TheoryRow& row : r.rows)
        lines.push_back(csv_quote(row.fspec) + "," + fmt_double(row.mean) + "," +
                        fmt_double(row.variance) + "," + fmt_double(row.centering) + "," +
                        std::to_string(r.nodes_used) + "," + fmt_double(r.radius));
    return lines;
}

LssSampleSet run_simulate(const SimulateConfig& cfg) {
    LoadedModel lm = load_model(cfg.model_path);
    if (!lm.has_sbm)
        throw validation_error("simulate: model file must carry edge probabilities (ptilde)");
    TestFunction f = parse_testfn(cfg.fspec);
    return monte_carlo(lm.sbm, f, cfg.nr, cfg.seed, cfg.which, cfg.model_path);
}

std::vector<std::string> render_samples(const LssSampleSet& set) {
    std::vector<std::string> lines;
    lines.push_back(kCsvVersionLine);
    lines.push_back("# model=" + set.model_id + " n=" + std::to_string(set.n) +
                    " f=" + set.fspec + " nr=" + std::to_string(set.values.size()) +
                    " seed=" + std::to_string(set.seed) + " which=" + which_name(set.renorm));
    lines.push_back("replicate,value");
    for (std::size_t r = 0; r < set.values.size(); ++r)
        lines.push_back(std::to_string(r) + "," + fmt_double(set.values[r]));
    return lines;
}

SamplesFile read_samples(const std::string& path) {
    SamplesFile s;
    bool header_seen = false;
    for (const std::string& line : read_lines(path)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream is(line.substr(1));
            std::string tok;
            while (is >> tok) {
                auto eq = tok.find('=');
                if (eq != std::string::npos)
                    s.meta[tok.substr(0, eq)] = tok.substr(eq + 1);
            }
            continue;
        }
        if (!header_seen) {
            if (line != "replicate,value")
                throw validation_error("samples file: expected 'replicate,value' header");
            header_seen = true;
            continue;
        }
        auto fields = csv_split(line);
        if (fields.size() != 2)
            throw validation_error("samples file: bad row '" + line + "'");
        s.values.push_back(std::stod(fields[1]));
    }
    if (!header_seen || s.values.empty())
        throw validation_error("samples file: no samples found");
    auto it = s.meta.find("n");
    if (it != s.meta.end()) s.n = std::stoi(it->second);
    it = s.meta.find("f");
    if (it != s.meta.end()) s.fspec = it->second;
    return s;
}

std::vector<TheoryRow> read_theory(const std::string& path) {
    std::vector<TheoryRow> rows;
    bool header_seen = false;
    for (const std::string& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("f,mean,variance,centering", 0) != 0)
                throw validation_error("theory file: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        auto fields = csv_split(line);
        if (fields.size() < 4)
            throw validation_error("theory file: bad row '" + line + "'");
        TheoryRow r;
        r.fspec = fields[0];
        r.mean = std::stod(fields[1]);
        r.variance = std::stod(fields[2]);
        r.centering = std::stod(fields[3]);
        rows.push_back(r);
    }
    if (rows.empty())
        throw validation_error("theory file: no rows found");
    return rows;
}

CompareResult run_compare(const CompareConfig& cfg) {
    SamplesFile samples = read_samples(cfg.samples_path);
    if (samples.n <= 0)
        throw validation_error("compare: samples file lacks matrix size metadata");
    std::vector<TheoryRow> rows = read_theory(cfg.theory_path);
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const TheoryRow& r) { return r.fspec == samples.fspec; });
    if (it == rows.end())
        throw validation_error("compare: theory file has no row for f=" + samples.fspec);

    CompareResult res;
    res.fspec = samples.fspec;
    res.n = samples.n;
    double theory_mean_uncentered = it->mean + samples.n * it->centering;
    res.summary = summarize(samples.values, theory_mean_uncentered, it->variance);
    if (!cfg.qq_out.empty()) {
        std::vector<std::string> lines;
        lines.push_back(kCsvVersionLine);
        lines.push_back("theoretical_quantile,sample_quantile");
        for (const QQPoint& p : res.summary.qq)
            lines.push_back(fmt_double(p.theoretical) + "," + fmt_double(p.sample));
        write_lines(cfg.qq_out, lines);
    }
    return res;
}

std::vector<std::string> render_compare(const CompareResult& r) {
    std::vector<std::string> lines;
    lines.push_back(kCsvVersionLine);
    lines.push_back(
        "f,n,nr,emp_mean,theory_mean,abs_diff_mean,emp_var,theory_var,abs_diff_var,ks_normal");
    const SummaryStats& s = r.summary;
    lines.push_back(csv_quote(r.fspec) + "," + std::to_string(r.n) + "," +
                    std::to_string(s.n_samples) + "," + fmt_double(s.mean) + "," +
                    fmt_double(s.theory_mean) + "," + fmt_double(s.abs_diff_mean) + "," +
                    fmt_double(s.variance) + "," + fmt_double(s.theory_var) + "," +
                    fmt_double(s.abs_diff_var) + "," + fmt_double(s.ks_normal));
    return lines;
}

GridResult run_grid(const GridConfig& cfg) {
    if (cfg.sizes.empty() || cfg.pvals.empty() || cfg.qvals.empty())
        throw validation_error("grid: sizes, p and q lists must be nonempty");
    TestFunction f = parse_testfn(cfg.fspec);
    const int K = static_cast<int>(cfg.sizes.size());
    const int n = total_size(cfg.sizes);
    GridResult res;
    for (std::size_t pi = 0; pi < cfg.pvals.size(); ++pi) {
        for (std::size_t qi = 0; qi < cfg.qvals.size(); ++qi) {
            double p = cfg.pvals[pi];
            double q = cfg.qvals[qi];
            SbmSpec sbm;
            sbm.sizes = cfg.sizes;
            sbm.Ptilde = Mat::Constant(K, K, q);
            sbm.Ptilde.diagonal().setConstant(p);
            BlockModelParams params = sbm_to_block_params(sbm);

            LssCalculator calc(params, cfg.nodes);
            double mean_centered = calc.mean(f);
            double var = calc.cov(f, f);
            double centering = calc.lsd(f);

            std::uint64_t cell_seed = key_combine(key_combine(mix64(cfg.seed), pi), qi);
            LssSampleSet mc = monte_carlo(sbm, f, cfg.nr, cell_seed, cfg.which);
            SummaryStats stats = summarize(mc.values, mean_centered + n * centering, var);

            GridCell cell;
            cell.p = p;
            cell.q = q;
            cell.theory_mean = mean_centered + n * centering;
            cell.emp_mean = stats.mean;
            cell.theory_var = var;
            cell.emp_var = stats.variance;
            cell.abs_diff_mean = stats.abs_diff_mean;
            cell.abs_diff_var = stats.abs_diff_var;
            res.cells.push_back(cell);
            res.max_abs_diff_mean = std::max(res.max_abs_diff_mean, cell.abs_diff_mean);
            res.max_abs_diff_var = std::max(res.max_abs_diff_var, cell.abs_diff_var);
        }
    }
    return res;
}

std::vector<std::string> render_grid(const GridResult& r, const GridConfig& cfg) {
    std::vector<std::string> lines;
    lines.push_back(kCsvVersionLine);
    std::string sizes;
    for (std::size_t i = 0; i < cfg.sizes.size(); ++i)
        sizes += (i ? "," : "") + std::to_string(cfg.sizes[i]);
    lines.push_back("# f=" + cfg.fspec + " nr=" + std::to_string(cfg.nr) +
                    " seed=" + std::to_string(cfg.seed) + " which=" + which_name(cfg.which) +
                    " sizes=" + sizes);
    lines.push_back("p,q,theory_mean,emp_mean,theory_var,emp_var,abs_diff_mean,abs_diff_var");
    for (const GridCell& c : r.cells)
        lines.push_back(fmt_double(c.p) + "," + fmt_double(c.q) + "," +
                        fmt_double(c.theory_mean) + "," + fmt_double(c.emp_mean) + "," +
                        fmt_double(c.theory_var) + "," + fmt_double(c.emp_var) + "," +
                        fmt_double(c.abs_diff_mean) + "," + fmt_double(c.abs_diff_var));
    lines.push_back("# max_abs_diff_mean=" + fmt_double(r.max_abs_diff_mean));
    lines.push_back("# max_abs_diff_var=" + fmt_double(r.max_abs_diff_var));
    return lines;
}

QqResult run_qq(const QqConfig& cfg) {
    SamplesFile a = read_samples(cfg.samples_a);
    QqResult res;
    if (cfg.samples_b.empty()) {
        SummaryStats s = summarize(a.values, 0.0, 0.0);
        if (s.degenerate)
            throw validation_error("qq: sample is constant, nothing to standardize");
        res.points = s.qq;
    } else {
        SamplesFile b = read_samples(cfg.samples_b);
        SummaryStats sa = summarize(a.values, 0.0, 0.0);
        if (sa.degenerate)
            throw validation_error("qq: first sample is constant, nothing to standardize");
        // Both samples standardized by the first sample's statistics, so mean
        // and variance differences remain visible in the plot.
        std::vector<double> sa_std(a.values), sb_std(b.values);
        for (double& v : sa_std) v = (v - sa.mean) / sa.stddev;
        for (double& v : sb_std) v = (v - sa.mean) / sa.stddev;
        res.two_sample = true;
        res.points = qq_two_sample(sa_std, sb_std);
        TwoSampleResult two = two_sample_compare(sa_std, sb_std);
        res.ks = two.ks;
        res.ks_critical = two.critical_5pct;
    }
    for (const QQPoint& p : res.points)
        res.max_abs_deviation = std::max(res.max_abs_deviation, std::abs(p.sample - p.theoretical));
    return res;
}

std::vector<std::string> render_qq(const QqResult& r) {
    std::vector<std::string> lines;
    lines.push_back(kCsvVersionLine);
    if (r.two_sample)
        lines.push_back("# ks=" + fmt_double(r.ks) + " ks_critical_5pct=" +
                        fmt_double(r.ks_critical) +
                        " max_abs_deviation=" + fmt_double(r.max_abs_deviation));
    lines.push_back("theoretical_quantile,sample_quantile");
    for (const QQPoint& p : r.points)
        lines.push_back(fmt_double(p.theoretical) + "," + fmt_double(p.sample));
    return lines;
}

LsdResult run_lsd(const LsdConfig& cfg) {
    if (cfg.points < 2)
        throw validation_error("lsd: need at least two evaluation points");
    if (cfg.eta <= 0.0)
        throw validation_error("lsd: eta must be positive");
    LoadedModel lm = load_model(cfg.model_path);
    LsdResult res;
    res.edge = spectral_edge(lm.params).edge;
    double lo = -res.edge - cfg.pad;
    double hi = res.edge + cfg.pad;
    res.x.resize(cfg.points);
    res.density.resize(cfg.points);
    for (int i = 0; i < cfg.points; ++i) {
        double x = lo + (hi - lo) * i / (cfg.points - 1);
        res.x[i] = x;
        res.density[i] = lsd_density(lm.params, x, cfg.eta);
    }
    return res;
}

std::vector<std::string> render_lsd(const LsdResult& r) {
    std::vector<std::string> lines;
    lines.push_back(kCsvVersionLine);
    lines.push_back("# edge=" + fmt_double(r.edge));
    lines.push_back("x,density");
    for (std::size_t i = 0; i < r.x.size(); ++i)
        lines.push_back(fmt_double(r.x[i]) + "," + fmt_double(r.density[i]));
    return lines;
}

OracleResult run_oracle(const OracleConfig& cfg) {
    LoadedModel lm = load_model(cfg.model_path);
    OracleResult res;
    res.n = cfg.n;
    res.k = cfg.k;
    res.value = exact_trace_moment(lm.params, cfg.n, cfg.k);
    return res;
}

std::vector<std::string> render_oracle(const OracleResult& r) {
    return {kCsvVersionLine, "n,k,value",
            std::to_string(r.n) + "," + std::to_string(r.k) + "," + fmt_double(r.value)};
}

} // namespace spectral_clt
