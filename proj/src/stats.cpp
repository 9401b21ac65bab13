#include "spectral_clt/stats.hpp"

#include "spectral_clt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spectral_clt {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw validation_error("normal_quantile: p must lie in (0,1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley step against the exact CDF.
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

double ks_statistic_normal(std::vector<double> sample) {
    if (sample.empty())
        throw validation_error("ks: sample must be nonempty");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double F = normal_cdf(sample[i]);
        d = std::max(d, F - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - F);
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw validation_error("ks: samples must be nonempty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

std::vector<QQPoint> qq_against_normal(const std::vector<double>& standardized_sorted) {
    const std::size_t n = standardized_sorted.size();
    std::vector<QQPoint> qq(n);
    for (std::size_t i = 0; i < n; ++i) {
        qq[i].theoretical = normal_quantile((static_cast<double>(i) + 0.5) / n);
        qq[i].sample = standardized_sorted[i];
    }
    return qq;
}

std::vector<QQPoint> qq_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw validation_error("qq: samples must be nonempty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a.size() == b.size()) {
        std::vector<QQPoint> qq(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            qq[i] = QQPoint{a[i], b[i]};
        return qq;
    }
    // Mismatched lengths: read both quantile functions at the probability
    // grid of the smaller sample.
    std::size_t m = std::min(a.size(), b.size());
    auto quantile = [](const std::vector<double>& v, double p) {
        double pos = p * (static_cast<double>(v.size()) - 1.0);
        std::size_t lo = static_cast<std::size_t>(pos);
        if (lo + 1 >= v.size()) return v.back();
        double w = pos - static_cast<double>(lo);
        return (1.0 - w) * v[lo] + w * v[lo + 1];
    };
    std::vector<QQPoint> qq(m);
    for (std::size_t i = 0; i < m; ++i) {
        double p = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
        qq[i] = QQPoint{quantile(a, p), quantile(b, p)};
    }
    return qq;
}

SummaryStats summarize(const std::vector<double>& values, double theory_mean, double theory_var) {
    if (values.empty())
        throw validation_error("summarize: sample must be nonempty");
    SummaryStats s;
    s.n_samples = values.size();
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.mean = mean;
    s.variance = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    s.stddev = std::sqrt(s.variance);
    s.theory_mean = theory_mean;
    s.theory_var = theory_var;
    s.abs_diff_mean = std::abs(mean - theory_mean);
    s.abs_diff_var = std::abs(s.variance - theory_var);
    s.degenerate = !(s.variance > 0.0);
    if (s.degenerate) {
        s.ks_normal = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    std::vector<double> std_sorted(values);
    for (double& v : std_sorted) v = (v - mean) / s.stddev;
    std::sort(std_sorted.begin(), std_sorted.end());
    s.ks_normal = ks_statistic_normal(std_sorted);
    s.qq = qq_against_normal(std_sorted);
    return s;
}

TwoSampleResult two_sample_compare(const std::vector<double>& a, const std::vector<double>& b) {
    TwoSampleResult r;
    r.na = a.size();
    r.nb = b.size();
    r.ks = ks_two_sample(a, b);
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    r.critical_5pct = 1.36 * std::sqrt((na + nb) / (na * nb));
    return r;
}

} // namespace spectral_clt
