#include "spectral_clt/block_model.hpp"

#include "spectral_clt/errors.hpp"

#include <numeric>

namespace spectral_clt {

int total_size(const std::vector<int>& sizes) {
    return std::accumulate(sizes.begin(), sizes.end(), 0);
}

static void check_square(const Mat& M, int K, const char* name) {
    if (M.rows() != K || M.cols() != K)
        throw validation_error(std::string(name) + " must be K x K");
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw validation_error(std::string(name) + " must be symmetric");
}

void validate_params(const BlockModelParams& p) {
    if (p.K <= 0) throw validation_error("K must be positive");
    if (static_cast<int>(p.sizes.size()) != p.K)
        throw validation_error("sizes must have K entries");
    for (int s : p.sizes)
        if (s <= 0) throw validation_error("block sizes must be positive");
    if (p.alpha.size() != p.K)
        throw validation_error("alpha must have K entries");
    if (std::abs(p.alpha.sum() - 1.0) > 1e-12)
        throw validation_error("alpha must sum to 1");
    check_square(p.Q2, p.K, "Q2");
    check_square(p.Q3, p.K, "Q3");
    check_square(p.Q4, p.K, "Q4");
    if (p.Q2.minCoeff() <= 0.0)
        throw validation_error("Q2 entries must be strictly positive");
}

void validate_spec(const SbmSpec& s) {
    int K = static_cast<int>(s.sizes.size());
    if (K == 0) throw validation_error("sizes must be nonempty");
    for (int v : s.sizes)
        if (v <= 0) throw validation_error("block sizes must be positive");
    check_square(s.Ptilde, K, "Ptilde");
    if (s.Ptilde.minCoeff() <= 0.0 || s.Ptilde.maxCoeff() >= 1.0)
        throw validation_error("Ptilde entries must lie strictly in (0,1)");
}

BlockModelParams make_block_params(std::vector<int> sizes, Mat Q2, Mat Q3, Mat Q4) {
    BlockModelParams p;
    p.K = static_cast<int>(sizes.size());
    p.sizes = std::move(sizes);
    int n = total_size(p.sizes);
    if (n <= 0) throw validation_error("total size must be positive");
    p.alpha = Vec(p.K);
    for (int k = 0; k < p.K; ++k)
        p.alpha[k] = static_cast<double>(p.sizes[k]) / n;
    p.Q2 = std::move(Q2);
    p.Q3 = std::move(Q3);
    p.Q4 = std::move(Q4);
    validate_params(p);
    return p;
}

int community_of(const std::vector<int>& sizes, int i) {
    if (i < 0) throw validation_error("vertex index must be nonnegative");
    int acc = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        acc += sizes[k];
        if (i < acc) return static_cast<int>(k);
    }
    throw validation_error("vertex index out of range");
}

BlockModelParams sbm_to_block_params(const SbmSpec& s) {
    validate_spec(s);
    int K = static_cast<int>(s.sizes.size());
    Mat Q2(K, K), Q3(K, K), Q4(K, K);
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < K; ++l) {
            double p = s.Ptilde(k, l);
            double pq = p * (1.0 - p);
            Q2(k, l) = pq;
            Q3(k, l) = pq * (1.0 - 2.0 * p);
            Q4(k, l) = pq * (1.0 - 6.0 * pq);
        }
    }
    return make_block_params(s.sizes, std::move(Q2), std::move(Q3), std::move(Q4));
}

} // namespace spectral_clt
