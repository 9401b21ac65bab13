#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectral_clt/errors.hpp"
#include "spectral_clt/qve.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>

using namespace spectral_clt;
using test_support::homogeneous_model;
using test_support::random_model;
using test_support::semicircle_m;
using test_support::unit_model;

TEST_CASE("single-block solution reproduces the semicircle transform") {
    BlockModelParams p = unit_model();
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> Ur(2.5, 20.0);
    std::uniform_real_distribution<double> Uphi(0.05, M_PI - 0.05);
    for (int t = 0; t < 200; ++t) {
        double r = Ur(rng);
        double phi = Uphi(rng);
        Complex z = r * Complex(std::cos(phi), std::sin(phi));
        if (t % 2 == 1) z = std::conj(z);
        QveSolution sol = solve_qve(p, z);
        Complex m = semicircle_m(z);
        CHECK(std::abs(sol.M[0] - m) <= 1e-10);
        CHECK(sol.residual <= 1e-12);
    }
}

TEST_CASE("pinned value at z = 2i") {
    QveSolution sol = solve_qve(unit_model(), Complex(0.0, 2.0));
    CHECK(sol.M[0].real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sol.M[0].imag() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("homogeneous blocks collapse to the scalar solution") {
    for (int K : {2, 5}) {
        BlockModelParams p = homogeneous_model(K, 0.7);
        for (Complex z : {Complex(0.5, 0.9), Complex(-2.1, 0.3), Complex(0.0, 5.0)}) {
            QveSolution sol = solve_qve(p, z);
            Complex m = semicircle_m(z, 0.7);
            for (int l = 0; l < K; ++l) CHECK(std::abs(sol.M[l] - m) <= 1e-10);
        }
    }
}

TEST_CASE("large-|z| expansion: leading -1/z and cubic correction") {
    std::mt19937 rng(31);
    BlockModelParams p = random_model(rng, 4);
    Vec rowsum = p.Q2 * p.alpha;
    Complex z(0.0, 10.0);
    QveSolution sol = solve_qve(p, z);
    for (int l = 0; l < p.K; ++l) {
        CHECK(std::abs(sol.M[l] + 1.0 / z) <= 0.02);
        // (M + 1/z) * z^3 -> -rowsum_l as |z| grows
        for (double t : {10.0, 20.0, 40.0}) {
            Complex zt(0.0, t);
            Complex corr = (solve_qve(p, zt).M[l] + 1.0 / zt) * zt * zt * zt;
            CHECK(std::abs(corr + rowsum[l]) <= 0.2 * rowsum[l]);
        }
    }
}

TEST_CASE("Herglotz: component imaginary parts stay positive off the real axis") {
    std::mt19937 rng(55);
    BlockModelParams p = random_model(rng, 5);
    for (int a = 0; a < 10; ++a) {
        for (int b = 0; b < 10; ++b) {
            double re = -4.0 + 8.0 * a / 9.0;
            double im = 0.05 + (10.0 - 0.05) * b / 9.0;
            QveSolution sol = solve_qve(p, Complex(re, im));
            for (int l = 0; l < p.K; ++l) CHECK(sol.M[l].imag() > 0.0);
            CHECK(sol.residual <= 1e-12);
        }
    }
}

TEST_CASE("conjugate arguments give exactly conjugate solutions") {
    std::mt19937 rng(99);
    BlockModelParams p = random_model(rng, 6);
    for (Complex z : {Complex(1.3, 0.4), Complex(-0.2, 2.0), Complex(3.0, 0.05)}) {
        QveSolution up = solve_qve(p, z);
        QveSolution down = solve_qve(p, std::conj(z));
        for (int l = 0; l < p.K; ++l) {
            CHECK(down.M[l].real() == up.M[l].real());
            CHECK(down.M[l].imag() == -up.M[l].imag());
        }
    }
}

TEST_CASE("real z is rejected, warm starts do not move the answer") {
    BlockModelParams p = unit_model();
    CHECK_THROWS_AS(solve_qve(p, Complex(3.0, 0.0)), validation_error);

    Complex z(0.7, 0.31);
    QveSolution cold = solve_qve(p, z);
    QveOptions opts;
    CVec guess = cold.M;
    opts.warm_start = &guess;
    QveSolution warm = solve_qve(p, z, opts);
    CHECK(std::abs(warm.M[0] - cold.M[0]) <= 1e-11);
}

TEST_CASE("stieltjes_total weights components by block fractions") {
    BlockModelParams p = homogeneous_model(3, 1.0, 40);
    Complex z(0.0, 2.0);
    Complex s = stieltjes_total(p, z);
    CHECK(std::abs(s - semicircle_m(z)) <= 1e-10);
}

TEST_CASE("density: bulk value, outside decay, symmetry, unit mass") {
    BlockModelParams p = unit_model();
    CHECK(lsd_density(p, 0.0, 1e-5) == doctest::Approx(1.0 / M_PI).epsilon(1e-3));
    double sc1 = std::sqrt(4.0 - 1.0) / (2.0 * M_PI);  // semicircle at x=1
    CHECK(lsd_density(p, 1.0, 1e-5) == doctest::Approx(sc1).epsilon(1e-3));
    CHECK(lsd_density(p, 3.0, 1e-5) <= 1e-3);
    CHECK_THROWS_AS(lsd_density(p, 0.0, 0.0), validation_error);

    std::mt19937 rng(1234);
    BlockModelParams q = random_model(rng, 3);
    for (double x : {0.3, 0.9, 1.7})
        CHECK(lsd_density(q, x, 1e-4) == doctest::Approx(lsd_density(q, -x, 1e-4)).epsilon(1e-9));

    // trapezoid mass over [-2.2, 2.2]
    const int N = 2201;
    double lo = -2.2, hi = 2.2, h = (hi - lo) / (N - 1);
    double mass = 0.0;
    for (int i = 0; i < N; ++i) {
        double w = (i == 0 || i == N - 1) ? 0.5 : 1.0;
        mass += w * lsd_density(p, lo + i * h, 1e-5);
    }
    mass *= h;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("spectral edge: unit case, scaling, homogeneous collapse") {
    SupportEstimate e1 = spectral_edge(unit_model());
    CHECK(e1.edge >= 2.0);
    CHECK(e1.edge <= 2.05);
    CHECK(e1.margin == 0.0);

    BlockModelParams p4 = unit_model();
    p4.Q2 *= 4.0;  // doubles the crude bound
    SupportEstimate e2 = spectral_edge(p4);
    CHECK(e2.edge >= 4.0);
    CHECK(e2.edge <= 4.1);

    SupportEstimate eh = spectral_edge(homogeneous_model(2, 1.0));
    CHECK(eh.edge == doctest::Approx(e1.edge).epsilon(1e-9));

    SupportEstimate em = spectral_edge(unit_model(), 0.25);
    CHECK(em.edge == doctest::Approx(e1.edge + 0.25).epsilon(1e-12));
    CHECK(em.margin == 0.25);
}
