#pragma once

#include <Eigen/Core>
#include <vector>

namespace spectral_clt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Block-constant cumulant description of a symmetric random matrix with zero
// diagonal: entry (i,j) in block (k,l) has a-th cumulant of the rescaled
// entry equal to Q{a}(k,l), a = 2,3,4. alpha holds the block weights
// n_k / n derived from sizes.
struct BlockModelParams {
    int K = 0;
    std::vector<int> sizes;
    Vec alpha;
    Mat Q2;
    Mat Q3;
    Mat Q4;
};

// Stochastic block model: independent Bernoulli(Ptilde(k,l)) edges on the
// upper triangle, zero diagonal, symmetrized.
struct SbmSpec {
    std::vector<int> sizes;
    Mat Ptilde;
};

// Throws validation_error on: nonpositive sizes, dimension mismatches,
// asymmetric cumulant matrices, or Q2 entries <= 0.
void validate_params(const BlockModelParams& p);

void validate_spec(const SbmSpec& s);

// Builds params from K, sizes and cumulant matrices; fills alpha.
BlockModelParams make_block_params(std::vector<int> sizes, Mat Q2, Mat Q3, Mat Q4);

// Community of vertex i (0-based) under contiguous block layout:
// vertices [0, n_0) are community 0, [n_0, n_0+n_1) community 1, ...
int community_of(const std::vector<int>& sizes, int i);

// Cumulants of the centered Bernoulli edge variable A - p: the rescaled
// entry of the renormalized SBM matrix. Q2 = p(1-p), Q3 = p(1-p)(1-2p),
// Q4 = p(1-p)(1-6p(1-p)).
BlockModelParams sbm_to_block_params(const SbmSpec& s);

// Total vertex count.
int total_size(const std::vector<int>& sizes);

} // namespace spectral_clt
