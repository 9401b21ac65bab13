#pragma once

#include "spectral_clt/block_model.hpp"
#include "spectral_clt/contour.hpp"
#include "spectral_clt/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spectral_clt {

enum class Renormalization { TrueP, Empirical };

// Adjacency matrix draw: Bernoulli(Ptilde(block pair)) on the upper
// triangle keyed by (stream key, i, j), symmetrized, zero diagonal. The
// same key always yields the same matrix, independent of thread layout.
Mat sample_sbm(const SbmSpec& s, std::uint64_t key);

// H = (A - Ptilde(block pair)) / sqrt(n) off the diagonal, zero diagonal.
Mat renormalize_true(const Mat& A, const SbmSpec& s);

// Same centering with block-wise empirical edge frequencies: within block
// pair (k,l) the estimate averages the n_k n_l (k != l) or n_k (n_k - 1)
// (k = l) off-diagonal entries.
Mat renormalize_empirical(const Mat& A, const std::vector<int>& sizes);

// Ascending eigenvalues of a symmetric matrix (tridiagonalization +
// implicit QL via Eigen). Rejects asymmetric input.
Vec symmetric_eigenvalues(const Mat& M);

// sum_i f(lambda_i) on the real spectrum.
double lss(const Vec& eigenvalues, const TestFunction& f);

struct LssSampleSet {
    std::string model_id;
    Renormalization renorm = Renormalization::TrueP;
    std::string fspec;
    std::uint64_t seed = 0;
    int n = 0;
    std::vector<double> values;  // one linear spectral statistic per replicate
};

// N_r independent replicates; replicate r draws from the stream keyed by
// (seed, r), so results are reproducible and thread-count independent.
LssSampleSet monte_carlo(const SbmSpec& s, const TestFunction& f, int n_replicates,
                         std::uint64_t seed, Renormalization which,
                         const std::string& model_id = "");

} // namespace spectral_clt
