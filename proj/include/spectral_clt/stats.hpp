#pragma once

#include <cstddef>
#include <vector>

namespace spectral_clt {

double normal_cdf(double x);

// Inverse standard normal CDF: rational approximation polished with one
// Halley step, accurate to ~1e-15 over (0,1).
double normal_quantile(double p);

// One-sample Kolmogorov-Smirnov distance between the empirical CDF of
// `sample` and the standard normal CDF.
double ks_statistic_normal(std::vector<double> sample);

// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct QQPoint {
    double theoretical = 0.0;
    double sample = 0.0;
};

// Sorted standardized sample against normal quantiles at (i + 1/2) / n.
std::vector<QQPoint> qq_against_normal(const std::vector<double>& standardized_sorted);

// Quantile pairs of two samples. Equal lengths pair order statistics
// directly; otherwise both empirical quantile functions are read at the
// probability grid of the smaller sample.
std::vector<QQPoint> qq_two_sample(std::vector<double> a, std::vector<double> b);

struct SummaryStats {
    std::size_t n_samples = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased
    double stddev = 0.0;
    bool degenerate = false; // constant sample: no standardization possible
    double ks_normal = 0.0;  // KS of the standardized sample vs N(0,1)
    std::vector<QQPoint> qq;
    double theory_mean = 0.0;
    double theory_var = 0.0;
    double abs_diff_mean = 0.0;
    double abs_diff_var = 0.0;
};

SummaryStats summarize(const std::vector<double>& values, double theory_mean, double theory_var);

struct TwoSampleResult {
    double ks = 0.0;
    double critical_5pct = 0.0;  // 1.36 sqrt((na+nb)/(na nb))
    std::size_t na = 0;
    std::size_t nb = 0;
};

TwoSampleResult two_sample_compare(const std::vector<double>& a, const std::vector<double>& b);

} // namespace spectral_clt
