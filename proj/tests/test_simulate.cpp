#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectral_clt/errors.hpp"
#include "spectral_clt/oracle.hpp"
#include "spectral_clt/rng.hpp"
#include "spectral_clt/simulate.hpp"
#include "spectral_clt/threading.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace spectral_clt;
using test_support::f_x;
using test_support::f_x2;

namespace {

SbmSpec flat_spec(int n, double p) {
    SbmSpec s;
    s.sizes = {n};
    s.Ptilde = Mat::Constant(1, 1, p);
    return s;
}

SbmSpec two_block_spec(int n1, int n2, double p, double q) {
    SbmSpec s;
    s.sizes = {n1, n2};
    s.Ptilde = Mat(2, 2);
    s.Ptilde << p, q, q, p;
    return s;
}

} // namespace

TEST_CASE("adjacency draws: shape, symmetry, reproducibility") {
    SbmSpec s = two_block_spec(30, 20, 0.6, 0.2);
    std::uint64_t key = replicate_key(7, 3);
    Mat A = sample_sbm(s, key);
    REQUIRE(A.rows() == 50);
    REQUIRE(A.cols() == 50);
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.diagonal().cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j)
            CHECK((A(i, j) == 0.0 || A(i, j) == 1.0));

    Mat B = sample_sbm(s, key);
    CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);  // same key, same matrix
    Mat C = sample_sbm(s, replicate_key(7, 4));
    CHECK((A - C).cwiseAbs().maxCoeff() != 0.0);

    // edge frequency within one block pair lands near its probability
    double cross = 0.0;
    for (int i = 0; i < 30; ++i)
        for (int j = 30; j < 50; ++j) cross += A(i, j);
    double freq = cross / 600.0;
    CHECK(std::abs(freq - 0.2) <= 3.0 * std::sqrt(0.2 * 0.8 / 600.0));
}

TEST_CASE("true-probability renormalization maps entries to two levels") {
    SbmSpec s = flat_spec(40, 0.3);
    Mat A = sample_sbm(s, replicate_key(11, 0));
    Mat H = renormalize_true(A, s);
    double rt = std::sqrt(40.0);
    CHECK(H.diagonal().cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) {
            if (i == j) continue;
            double expect = (A(i, j) == 1.0 ? 0.7 : -0.3) / rt;
            CHECK(H(i, j) == doctest::Approx(expect).epsilon(1e-14));
        }
    // centered entries: row sums concentrate around zero
    CHECK(std::abs(H.sum()) / 40.0 <= 3.0 * std::sqrt(0.3 * 0.7));
}

TEST_CASE("empirical renormalization centers each block pair exactly") {
    SbmSpec s = two_block_spec(25, 15, 0.5, 0.25);
    Mat A = sample_sbm(s, replicate_key(13, 2));
    Mat H = renormalize_empirical(A, s.sizes);
    CHECK(H.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK((H - H.transpose()).cwiseAbs().maxCoeff() <= 1e-15);

    // off-diagonal sums vanish block pair by block pair
    double s00 = 0.0, s01 = 0.0, s11 = 0.0;
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) {
            if (i == j) continue;
            bool bi = i >= 25, bj = j >= 25;
            if (!bi && !bj) s00 += H(i, j);
            else if (bi && bj) s11 += H(i, j);
            else s01 += H(i, j);
        }
    CHECK(std::abs(s00) <= 1e-10);
    CHECK(std::abs(s01) <= 1e-10);
    CHECK(std::abs(s11) <= 1e-10);

    // all-ones adjacency has frequency one everywhere, so H vanishes
    SbmSpec tiny = flat_spec(3, 0.5);
    Mat ones = Mat::Ones(3, 3);
    ones.diagonal().setZero();
    CHECK(renormalize_empirical(ones, tiny.sizes).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("empirical and true renormalizations drift apart slowly") {
    // ||H_hat - H|| stays O(1/sqrt(n)) of ||H|| ~ 2; power iteration on the
    // difference bounds the spectral norm
    SbmSpec s = two_block_spec(500, 500, 0.5, 0.3);
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        Mat A = sample_sbm(s, replicate_key(1000, rep));
        Mat D = renormalize_empirical(A, s.sizes) - renormalize_true(A, s);
        Vec v = Vec::Constant(1000, 1.0 / std::sqrt(1000.0));
        double norm = 0.0;
        for (int it = 0; it < 30; ++it) {
            Vec w = D * v;
            norm = w.norm();
            if (norm == 0.0) break;
            v = w / norm;
        }
        worst = std::max(worst, norm);
    }
    CHECK(worst <= 0.5);  // compare with spectral radius ~ 2 sqrt(pq)
}

TEST_CASE("symmetric eigenvalues: closed-form cases and guards") {
    Mat D = Mat::Zero(3, 3);
    D(0, 0) = 2.0; D(1, 1) = -1.0; D(2, 2) = 0.5;
    Vec ev = symmetric_eigenvalues(D);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ev[2] == doctest::Approx(2.0).epsilon(1e-14));

    Mat R(2, 2);
    R << 1.0, 2.0, 2.0, 1.0;  // eigenvalues, 1 +- 2
    Vec er = symmetric_eigenvalues(R);
    CHECK(er[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(er[1] == doctest::Approx(3.0).epsilon(1e-14));

    Mat bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(symmetric_eigenvalues(bad), validation_error);
    CHECK_THROWS_AS(symmetric_eigenvalues(Mat::Zero(2, 3)), validation_error);

    // trace identity on a sampled matrix
    SbmSpec s = flat_spec(60, 0.4);
    Mat H = renormalize_true(sample_sbm(s, replicate_key(21, 0)), s);
    Vec hev = symmetric_eigenvalues(H);
    CHECK(hev.sum() == doctest::Approx(H.trace()).epsilon(1e-10));
    CHECK(hev.squaredNorm() == doctest::Approx(H.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("sampled spectra approach the semicircle") {
    // p = 1/2 and true centering: entries are +-1/(2 sqrt(n)) coin flips
    SbmSpec s = flat_spec(200, 0.5);
    Mat H = renormalize_true(sample_sbm(s, replicate_key(31, 0)), s);
    Vec ev = symmetric_eigenvalues(2.0 * H);  // rescale variance to 1
    // empirical CDF against the semicircle CDF at a few interior points
    auto sc_cdf = [](double x) {
        if (x <= -2.0) return 0.0;
        if (x >= 2.0) return 1.0;
        return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * M_PI) + std::asin(x / 2.0) / M_PI;
    };
    for (double x : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
        double ecdf = 0.0;
        for (int i = 0; i < ev.size(); ++i) ecdf += (ev[i] <= x) ? 1.0 : 0.0;
        ecdf /= double(ev.size());
        CHECK(std::abs(ecdf - sc_cdf(x)) <= 0.05);
    }
}

TEST_CASE("linear spectral statistics evaluate on the spectrum") {
    Vec ev(3);
    ev << -1.0, 0.0, 2.0;
    CHECK(lss(ev, f_x()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lss(ev, f_x2()) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lss(ev, TestFunction::exponential()) ==
          doctest::Approx(std::exp(-1.0) + 1.0 + std::exp(2.0)).epsilon(1e-14));

    // zero diagonal makes the linear statistic of x identically zero
    SbmSpec s = flat_spec(80, 0.35);
    Mat H = renormalize_true(sample_sbm(s, replicate_key(41, 0)), s);
    CHECK(std::abs(lss(symmetric_eigenvalues(H), f_x())) <= 1e-10);
}

TEST_CASE("monte carlo: reproducibility and agreement with exact moments") {
    SbmSpec s = two_block_spec(50, 50, 0.5, 0.3);
    LssSampleSet a = monte_carlo(s, f_x2(), 200, 12345, Renormalization::TrueP, "m");
    LssSampleSet b = monte_carlo(s, f_x2(), 200, 12345, Renormalization::TrueP, "m");
    REQUIRE(a.values.size() == 200);
    CHECK(a.values == b.values);  // bitwise reproducible
    CHECK(a.n == 100);
    CHECK(a.model_id == "m");

    LssSampleSet c = monte_carlo(s, f_x2(), 200, 54321, Renormalization::TrueP, "m");
    CHECK(a.values != c.values);

    // sample mean of Tr H^2 sits within 4 standard errors of the exact value
    BlockModelParams p = sbm_to_block_params(s);
    double exact = exact_trace_moment(p, 100, 2);
    double var = exact_var_tr_h2(p, 100);
    double mean = 0.0;
    for (double v : a.values) mean += v;
    mean /= 200.0;
    CHECK(std::abs(mean - exact) <= 4.0 * std::sqrt(var / 200.0));
}

TEST_CASE("monte carlo output does not depend on the thread count") {
    SbmSpec s = flat_spec(40, 0.5);
    std::vector<std::vector<double>> runs;
    for (int nt : {1, 3, 8}) {
        set_thread_count(nt);
        runs.push_back(monte_carlo(s, f_x2(), 64, 777, Renormalization::Empirical).values);
    }
    set_thread_count(0);  // back to automatic
    CHECK(runs[0] == runs[1]);
    CHECK(runs[0] == runs[2]);
}
