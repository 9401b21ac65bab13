#pragma once

#include "spectral_clt/block_model.hpp"
#include "spectral_clt/clt_kernels.hpp"
#include "spectral_clt/qve.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace spectral_clt {

// Counterclockwise circle around the spectrum. Angles carry a half-step
// offset so no node lands on the real axis; nodes come in conjugate pairs
// (j <-> N-1-j). Integrators multiply tangents by the step 2 pi / N.
struct ContourQuadrature {
    double center = 0.0;
    double radius = 0.0;
    int N = 0;
    std::vector<Complex> nodes;
    std::vector<Complex> tangents;
};

// Radius policy max(1.2 edge + 0.5, edge + safety); every node must pass a
// condition check (reciprocal condition of the kernel systems > 1e-12), else
// the radius grows by 25%, at most 8 attempts. N must be a power of two,
// at least 64.
ContourQuadrature build_contour(const BlockModelParams& p, int N = 512, double safety = 0.0);

// Circle nodes at a given radius without condition checking; used when a
// vetted radius is already known.
ContourQuadrature circle_nodes(double radius, int N);

// Test function on the complex plane: polynomial (ascending coefficients),
// exp, or a caller-registered callable.
struct TestFunction {
    enum class Kind { Polynomial, Exp, User };
    Kind kind = Kind::Polynomial;
    std::vector<Complex> coeffs;
    std::string spec;  // printable form, e.g. "poly:0,0,1" or "exp"
    std::function<Complex(Complex)> fn;

    static TestFunction polynomial(std::vector<Complex> c);
    static TestFunction exponential();
    static TestFunction user(std::string name, std::function<Complex(Complex)> f);
};

Complex eval_testfn(const TestFunction& f, Complex z);

// Accepts "poly:c0,c1,..." (real coefficients) or "exp"; anything else is a
// validation error.
TestFunction parse_testfn(const std::string& s);

// Integration engine for one model. Caches per-node QVE solutions, the
// mean kernel diagonal and (lazily) the full two-point covariance kernel
// grid; node count doubles automatically (up to 4096) until trapezoid
// results are stable to 1e-8.
class LssCalculator {
public:
    LssCalculator(const BlockModelParams& p, int N = 512, double safety = 0.0);
    LssCalculator(const BlockModelParams& p, const ContourQuadrature& contour);

    // -(1/2 pi i) contour integral of Mean(z) f(z).
    double mean(const TestFunction& f);
    // (1/2 pi i)^2 double contour integral of f(z1) g(z2) Cov(z1,z2).
    double cov(const TestFunction& f, const TestFunction& g);
    // Moment of the limiting spectral measure.
    double lsd(const TestFunction& f);

    int nodes_used() const { return table_.contour.N; }
    double radius() const { return table_.contour.radius; }
    const ContourQuadrature& contour() const { return table_.contour; }

    // Kernel values at current resolution, for diagnostics dumps.
    Complex mean_kernel_at(int j) const { return table_.mean_diag[j]; }
    Complex cov_kernel_at(int j1, int j2);

private:
    struct NodeTable {
        ContourQuadrature contour;
        std::vector<CVec> M;
        std::vector<CMat> X;
        std::vector<Complex> mean_diag;   // sum_k Y_k(z_j)
        std::vector<Complex> stieltjes;   // sum_l alpha_l M_l(z_j)
    };

    void build_table(int N);
    void ensure_cov_grid();
    Complex contour_sum(const std::vector<Complex>& kernel, const TestFunction& f,
                        bool half) const;
    Complex cov_sum(const TestFunction& f, const TestFunction& g, bool half) const;
    double converge_scalar(const std::function<Complex(bool)>& eval, const char* what);

    BlockModelParams params_;
    NodeTable table_;
    CMat cov_grid_;  // empty until a covariance integral is requested
    bool cov_ready_ = false;
};

// One-shot wrappers over LssCalculator.
double mean_lss(const TestFunction& f, const BlockModelParams& p, const ContourQuadrature& c);
double cov_lss(const TestFunction& f, const TestFunction& g, const BlockModelParams& p,
               const ContourQuadrature& c);
double lsd_integral(const TestFunction& f, const BlockModelParams& p, const ContourQuadrature& c);

} // namespace spectral_clt
