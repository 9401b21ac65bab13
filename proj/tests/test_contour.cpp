#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectral_clt/contour.hpp"
#include "spectral_clt/errors.hpp"
#include "spectral_clt/oracle.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>

using namespace spectral_clt;
using test_support::f_x;
using test_support::f_x2;
using test_support::f_x4;
using test_support::homogeneous_model;
using test_support::poly;
using test_support::random_model;
using test_support::unit_model;

TEST_CASE("contour geometry: radius policy, closure, conjugate pairing") {
    BlockModelParams p = unit_model();
    ContourQuadrature c = build_contour(p, 128);
    // edge lands near 2, so the policy radius is about 1.2*2 + 0.5
    CHECK(c.radius >= 2.85);
    CHECK(c.radius <= 3.2);
    CHECK(c.N == 128);
    REQUIRE(int(c.nodes.size()) == c.N);

    Complex tsum = 0.0;
    for (int j = 0; j < c.N; ++j) {
        CHECK(std::abs(std::abs(c.nodes[j] - c.center) - c.radius) <= 1e-12 * c.radius);
        CHECK(c.nodes[j].imag() != 0.0);  // half-step offset keeps nodes off the axis
        CHECK(c.nodes[c.N - 1 - j].real() == c.nodes[j].real());
        CHECK(c.nodes[c.N - 1 - j].imag() == -c.nodes[j].imag());
        tsum += c.tangents[j];
    }
    CHECK(std::abs(tsum) <= 1e-12 * c.N * c.radius);

    CHECK_THROWS_AS(build_contour(p, 100), validation_error);  // not a power of two
    CHECK_THROWS_AS(build_contour(p, 32), validation_error);   // too few nodes
}

TEST_CASE("test function evaluation and parsing") {
    TestFunction q = poly({1.0, -2.0, 0.5});
    Complex z(0.3, 0.7);
    CHECK(std::abs(eval_testfn(q, z) - (1.0 - 2.0 * z + 0.5 * z * z)) <= 1e-15);

    TestFunction e = TestFunction::exponential();
    CHECK(std::abs(eval_testfn(e, z) - std::exp(z)) <= 1e-15);
    CHECK(e.spec == "exp");

    TestFunction u = TestFunction::user("square", [](Complex w) { return w * w; });
    CHECK(std::abs(eval_testfn(u, z) - z * z) <= 1e-15);
    CHECK(u.spec == "square");

    TestFunction parsed = parse_testfn("poly:0,0,1");
    REQUIRE(parsed.coeffs.size() == 3);
    CHECK(parsed.coeffs[2].real() == 1.0);
    CHECK(parsed.spec == "poly:0,0,1");
    CHECK(parse_testfn("poly:1.5,-2e-3").coeffs[1].real() == doctest::Approx(-2e-3));
    CHECK(parse_testfn("exp").kind == TestFunction::Kind::Exp);

    CHECK_THROWS_AS(parse_testfn("sin"), validation_error);
    CHECK_THROWS_AS(parse_testfn("poly:"), validation_error);
    CHECK_THROWS_AS(parse_testfn("poly:1,junk"), validation_error);
    CHECK_THROWS_AS(parse_testfn(""), validation_error);

    TestFunction bare;
    bare.kind = TestFunction::Kind::User;  // no callable registered
    CHECK_THROWS_AS(eval_testfn(bare, z), validation_error);
}

TEST_CASE("limiting-measure moments via the resolvent trace") {
    LssCalculator calc(unit_model(), 128);
    CHECK(calc.lsd(poly({1.0})) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(calc.lsd(f_x())) <= 1e-9);
    CHECK(calc.lsd(f_x2()) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(calc.lsd(f_x4()) == doctest::Approx(2.0).epsilon(1e-9));
    // sum over k of Catalan_k / (2k)! is the Bessel value I_1(2)
    CHECK(calc.lsd(TestFunction::exponential()) ==
          doctest::Approx(1.5906368546373291).epsilon(1e-9));

    LssCalculator hom(homogeneous_model(3, 0.7), 128);
    CHECK(hom.lsd(f_x2()) == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(hom.lsd(f_x4()) == doctest::Approx(2.0 * 0.49).epsilon(1e-9));
}

TEST_CASE("mean shift: exact values for quadratics, zero for traceless cases") {
    LssCalculator calc(unit_model(), 128);
    CHECK(std::abs(calc.mean(poly({1.0}))) <= 1e-8);
    CHECK(std::abs(calc.mean(f_x())) <= 1e-8);  // zero diagonal kills Tr H
    CHECK(calc.mean(f_x2()) == doctest::Approx(-1.0).epsilon(1e-6));

    LssCalculator hom(homogeneous_model(3, 0.7), 128);
    CHECK(hom.mean(f_x2()) == doctest::Approx(-0.7).epsilon(1e-6));

    // mean shift of x^2 equals -sum_k alpha_k Q2(k,k) for any block model
    std::mt19937 rng(31);
    for (int t = 0; t < 5; ++t) {
        BlockModelParams p = random_model(rng, 5);
        double expected = 0.0;
        for (int k = 0; k < p.K; ++k) expected -= p.alpha[k] * p.Q2(k, k);
        LssCalculator c(p, 128);
        CHECK(c.mean(f_x2()) == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("variance functional: pinned single-block values") {
    LssCalculator calc(unit_model(), 128);
    CHECK(std::abs(calc.cov(f_x(), f_x())) <= 1e-8);
    CHECK(std::abs(calc.cov(f_x(), f_x2())) <= 1e-7);
    CHECK(calc.cov(f_x2(), f_x2()) == doctest::Approx(4.0).epsilon(1e-5));
    CHECK(calc.cov(f_x4(), f_x4()) == doctest::Approx(72.0).epsilon(1e-4));
    CHECK(calc.cov(f_x2(), f_x4()) == doctest::Approx(16.0).epsilon(1e-4));

    // bilinear symmetry and a 2x2 Gram positivity check
    double vff = calc.cov(f_x2(), f_x2());
    double vgg = calc.cov(f_x4(), f_x4());
    double vfg = calc.cov(f_x2(), f_x4());
    double vgf = calc.cov(f_x4(), f_x2());
    CHECK(std::abs(vfg - vgf) <= 1e-10 * std::max(1.0, std::abs(vfg)));
    CHECK(vff >= 0.0);
    CHECK(vgg >= 0.0);
    CHECK(vff * vgg - vfg * vfg >= -1e-8);
}

TEST_CASE("variance functional matches the exact trace-square variance limit") {
    std::mt19937 rng(32);
    for (int t = 0; t < 3; ++t) {
        BlockModelParams p = random_model(rng, 4);
        // limit of exact_var_tr_h2 as the sizes grow at fixed fractions
        double limit = 0.0;
        for (int a = 0; a < p.K; ++a)
            for (int b = 0; b < p.K; ++b)
                limit += 2.0 * p.alpha[a] * p.alpha[b] *
                         (p.Q4(a, b) + 2.0 * p.Q2(a, b) * p.Q2(a, b));
        LssCalculator c(p, 128);
        CHECK(c.cov(f_x2(), f_x2()) == doctest::Approx(limit).epsilon(1e-5));
    }
}

TEST_CASE("resolution stability and adopted contours") {
    BlockModelParams p = unit_model();
    LssCalculator a(p, 64);
    LssCalculator b(p, 512);
    CHECK(std::abs(a.mean(f_x2()) - b.mean(f_x2())) <= 1e-8);
    CHECK(std::abs(a.cov(f_x2(), f_x2()) - b.cov(f_x2(), f_x2())) <= 1e-7);

    // caller-supplied circle at a vetted radius
    LssCalculator c(p, circle_nodes(3.0, 128));
    CHECK(c.radius() == 3.0);
    CHECK(std::abs(c.mean(f_x2()) - b.mean(f_x2())) <= 1e-8);

    // one-shot wrappers agree with the calculator
    ContourQuadrature q = build_contour(p, 128);
    CHECK(std::abs(mean_lss(f_x2(), p, q) - b.mean(f_x2())) <= 1e-8);
    CHECK(std::abs(cov_lss(f_x2(), f_x2(), p, q) - b.cov(f_x2(), f_x2())) <= 1e-7);
    CHECK(std::abs(lsd_integral(f_x2(), p, q) - 1.0) <= 1e-8);
}
