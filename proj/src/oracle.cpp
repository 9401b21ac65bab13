#include "spectral_clt/oracle.hpp"

#include "spectral_clt/errors.hpp"

#include <cmath>

namespace spectral_clt {

EntryMoments entry_moments(const BlockModelParams& p, int k, int l) {
    if (k < 0 || k >= p.K || l < 0 || l >= p.K)
        throw validation_error("entry_moments: block index out of range");
    EntryMoments m;
    m.m1 = 0.0;
    m.m2 = p.Q2(k, l);
    m.m3 = p.Q3(k, l);
    m.m4 = p.Q4(k, l) + 3.0 * p.Q2(k, l) * p.Q2(k, l);
    return m;
}

std::vector<int> scale_sizes(const BlockModelParams& p, int n) {
    validate_params(p);
    if (n <= 0) throw validation_error("oracle: n must be positive");
    int n0 = total_size(p.sizes);
    std::vector<int> sizes(p.K);
    int acc = 0;
    for (int k = 0; k < p.K; ++k) {
        long long num = static_cast<long long>(p.sizes[k]) * n;
        if (num % n0 != 0)
            throw validation_error("oracle: n does not split into integer blocks");
        sizes[k] = static_cast<int>(num / n0);
        if (sizes[k] <= 0)
            throw validation_error("oracle: scaled block size must be positive");
        acc += sizes[k];
    }
    if (acc != n) throw validation_error("oracle: scaled sizes do not sum to n");
    return sizes;
}

double exact_trace_moment(const BlockModelParams& p, int n, int k) {
    if (k < 1 || k > 4)
        throw validation_error("exact_trace_moment: k must be in 1..4");
    if (k == 4 && n > 100)
        throw validation_error("exact_trace_moment: n <= 100 required for k = 4");
    std::vector<int> sizes = scale_sizes(p, n);
    const int K = p.K;

    if (k == 1 || k == 3) return 0.0;  // odd powers vanish: zero diagonal, centered entries

    // ordered pair counts N2(a,b) = #{(i,j): i != j, i in block a, j in block b}
    Mat N2(K, K);
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            N2(a, b) = static_cast<double>(sizes[a]) * sizes[b] - (a == b ? sizes[a] : 0);

    if (k == 2) {
        double s = 0.0;
        for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b)
                s += N2(a, b) * p.Q2(a, b);
        return s / n;
    }

    // k == 4: closed cycles i-j-k-l-i with every edge repeated. Patterns:
    // (i=k, j=l): one edge to the fourth power; (i=k, j!=l) and (j=l, i!=k):
    // two distinct edges sharing a center vertex, squared.
    double m4sum = 0.0;
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            m4sum += N2(a, b) * entry_moments(p, a, b).m4;

    double paths = 0.0;
    for (int g = 0; g < K; ++g) {
        double s = 0.0, t = 0.0;
        for (int a = 0; a < K; ++a) {
            double cnt = sizes[a] - (a == g ? 1 : 0);
            s += cnt * p.Q2(g, a);
            t += cnt * p.Q2(g, a) * p.Q2(g, a);
        }
        paths += sizes[g] * (s * s - t);
    }

    return (m4sum + 2.0 * paths) / (static_cast<double>(n) * n);
}

double exact_var_tr_h2(const BlockModelParams& p, int n) {
    std::vector<int> sizes = scale_sizes(p, n);
    const int K = p.K;
    double s = 0.0;
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) {
            double N2 = static_cast<double>(sizes[a]) * sizes[b] - (a == b ? sizes[a] : 0);
            s += N2 * (p.Q4(a, b) + 2.0 * p.Q2(a, b) * p.Q2(a, b));
        }
    return 2.0 * s / (static_cast<double>(n) * n);
}

} // namespace spectral_clt
