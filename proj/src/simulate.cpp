#include "spectral_clt/simulate.hpp"

#include "spectral_clt/errors.hpp"
#include "spectral_clt/rng.hpp"
#include "spectral_clt/threading.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace spectral_clt {

Mat sample_sbm(const SbmSpec& s, std::uint64_t key) {
    validate_spec(s);
    const int n = total_size(s.sizes);
    std::vector<int> comm(n);
    for (int i = 0; i < n; ++i) comm[i] = community_of(s.sizes, i);
    Mat A = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double p = s.Ptilde(comm[i], comm[j]);
            double a = entry_uniform(key, i, j) < p ? 1.0 : 0.0;
            A(i, j) = a;
            A(j, i) = a;
        }
    }
    return A;
}

Mat renormalize_true(const Mat& A, const SbmSpec& s) {
    validate_spec(s);
    const int n = total_size(s.sizes);
    if (A.rows() != n || A.cols() != n)
        throw validation_error("renormalize: adjacency size does not match sizes");
    std::vector<int> comm(n);
    for (int i = 0; i < n; ++i) comm[i] = community_of(s.sizes, i);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Mat H(n, n);
    for (int i = 0; i < n; ++i) {
        H(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            double h = (A(i, j) - s.Ptilde(comm[i], comm[j])) * scale;
            H(i, j) = h;
            H(j, i) = h;
        }
    }
    return H;
}

Mat renormalize_empirical(const Mat& A, const std::vector<int>& sizes) {
    const int n = total_size(sizes);
    if (A.rows() != n || A.cols() != n)
        throw validation_error("renormalize: adjacency size does not match sizes");
    const int K = static_cast<int>(sizes.size());
    std::vector<int> comm(n);
    for (int i = 0; i < n; ++i) comm[i] = community_of(sizes, i);

    Mat sum = Mat::Zero(K, K);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) sum(comm[i], comm[j]) += A(i, j);
    Mat phat(K, K);
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < K; ++l) {
            double cnt = k == l ? static_cast<double>(sizes[k]) * (sizes[k] - 1)
                                : static_cast<double>(sizes[k]) * sizes[l];
            if (cnt <= 0.0)
                throw validation_error("renormalize: block too small for empirical frequencies");
            phat(k, l) = sum(k, l) / cnt;
        }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Mat H(n, n);
    for (int i = 0; i < n; ++i) {
        H(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            double h = (A(i, j) - phat(comm[i], comm[j])) * scale;
            H(i, j) = h;
            H(j, i) = h;
        }
    }
    return H;
}

Vec symmetric_eigenvalues(const Mat& M) {
    if (M.rows() != M.cols())
        throw validation_error("eigenvalues: matrix must be square");
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw validation_error("eigenvalues: matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> solver(M, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numerical_error("eigenvalues: solver failed to converge");
    return solver.eigenvalues();
}

double lss(const Vec& eigenvalues, const TestFunction& f) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        s += eval_testfn(f, Complex(eigenvalues[i], 0.0)).real();
    return s;
}

LssSampleSet monte_carlo(const SbmSpec& s, const TestFunction& f, int n_replicates,
                         std::uint64_t seed, Renormalization which,
                         const std::string& model_id) {
    validate_spec(s);
    if (n_replicates < 1)
        throw validation_error("monte_carlo: need at least one replicate");
    LssSampleSet set;
    set.model_id = model_id;
    set.renorm = which;
    set.fspec = f.spec;
    set.seed = seed;
    set.n = total_size(s.sizes);
    set.values.assign(n_replicates, 0.0);
    parallel_for(static_cast<std::size_t>(n_replicates), [&](std::size_t r) {
        Mat A = sample_sbm(s, replicate_key(seed, r));
        Mat H = which == Renormalization::TrueP ? renormalize_true(A, s)
                                                : renormalize_empirical(A, s.sizes);
        Vec ev = symmetric_eigenvalues(H);
        set.values[r] = lss(ev, f);
    });
    return set;
}

} // namespace spectral_clt
