#include "spectral_clt/contour.hpp"

#include "spectral_clt/errors.hpp"
#include "spectral_clt/threading.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

namespace spectral_clt {

namespace {

constexpr double kRcondFloor = 1e-12;
constexpr double kConvergeTol = 1e-8;
constexpr double kImagTol = 1e-8;
constexpr int kMaxNodes = 4096;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Compensated complex accumulation; keeps the big trapezoid sums independent
// of rounding drift at any N.
struct KahanSum {
    Complex s{0.0, 0.0};
    Complex c{0.0, 0.0};
    void add(Complex v) {
        Complex y = v - c;
        Complex t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

} // namespace

ContourQuadrature circle_nodes(double radius, int N) {
    ContourQuadrature c;
    c.center = 0.0;
    c.radius = radius;
    c.N = N;
    c.nodes.resize(N);
    c.tangents.resize(N);
    // Lower half by conjugation, not by trig, so pairs j <-> N-1-j mirror
    // exactly in floating point.
    for (int j = 0; j < N / 2; ++j) {
        double theta = 2.0 * M_PI * (j + 0.5) / N;
        Complex e(std::cos(theta), std::sin(theta));
        c.nodes[j] = radius * e;
        c.tangents[j] = Complex(0.0, 1.0) * radius * e;
        c.nodes[N - 1 - j] = std::conj(c.nodes[j]);
        c.tangents[N - 1 - j] = -std::conj(c.tangents[j]);
    }
    return c;
}

ContourQuadrature build_contour(const BlockModelParams& p, int N, double safety) {
    if (!power_of_two(N) || N < 64)
        throw validation_error("contour: N must be a power of two, at least 64");
    validate_params(p);
    double edge = spectral_edge(p).edge;
    double radius = std::max(1.2 * edge + 0.5, edge + safety);

    for (int attempt = 0; attempt < 8; ++attempt) {
        ContourQuadrature c = circle_nodes(radius, N);
        bool ok = true;
        CVec warm;
        // Conjugate nodes share conditioning, so checking the upper half covers all.
        for (int j = 0; j < N / 2 && ok; ++j) {
            QveOptions opts;
            if (warm.size() > 0) opts.warm_start = &warm;
            QveSolution sol;
            try {
                sol = solve_qve(p, c.nodes[j], opts);
            } catch (const numerical_error&) {
                ok = false;  // a wider circle keeps nodes clear of the support
                break;
            }
            warm = sol.M;
            CMat C1 = co1(p, c.nodes[j], sol.M);
            if (!(Eigen::PartialPivLU<CMat>(C1).rcond() > kRcondFloor)) { ok = false; break; }
            CMat A = p.Q2.cast<Complex>();
            for (int l = 0; l < p.K; ++l)
                A(l, l) -= 1.0 / (p.alpha[l] * sol.M[l] * sol.M[l]);
            if (!(Eigen::PartialPivLU<CMat>(A).rcond() > kRcondFloor)) { ok = false; break; }
        }
        if (ok) return c;
        radius *= 1.25;
    }
    throw numerical_error("contour: no admissible radius found (systems stay ill-conditioned)");
}

// ---- test functions ----

TestFunction TestFunction::polynomial(std::vector<Complex> c) {
    if (c.empty())
        throw validation_error("test function: polynomial needs at least one coefficient");
    TestFunction f;
    f.kind = Kind::Polynomial;
    f.coeffs = std::move(c);
    std::ostringstream os;
    os << "poly:";
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i) os << ",";
        if (f.coeffs[i].imag() == 0.0)
            os << f.coeffs[i].real();
        else
            os << f.coeffs[i].real() << "+" << f.coeffs[i].imag() << "i";
    }
    f.spec = os.str();
    return f;
}

TestFunction TestFunction::exponential() {
    TestFunction f;
    f.kind = Kind::Exp;
    f.spec = "exp";
    return f;
}

TestFunction TestFunction::user(std::string name, std::function<Complex(Complex)> fn) {
    TestFunction f;
    f.kind = Kind::User;
    f.spec = std::move(name);
    f.fn = std::move(fn);
    return f;
}

Complex eval_testfn(const TestFunction& f, Complex z) {
    switch (f.kind) {
        case TestFunction::Kind::Polynomial: {
            Complex acc(0.0, 0.0);
            for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it)
                acc = acc * z + *it;
            return acc;
        }
        case TestFunction::Kind::Exp:
            return std::exp(z);
        case TestFunction::Kind::User:
            if (!f.fn)
                throw validation_error("test function: unknown user function '" + f.spec + "'");
            return f.fn(z);
    }
    throw validation_error("test function: bad kind");
}

TestFunction parse_testfn(const std::string& s) {
    if (s == "exp") return TestFunction::exponential();
    const std::string prefix = "poly:";
    if (s.rfind(prefix, 0) == 0) {
        std::vector<Complex> coeffs;
        std::stringstream ss(s.substr(prefix.size()));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(tok, &pos);
            } catch (const std::exception&) {
                throw validation_error("test function: bad coefficient '" + tok + "'");
            }
            if (pos != tok.size())
                throw validation_error("test function: bad coefficient '" + tok + "'");
            coeffs.emplace_back(v, 0.0);
        }
        if (coeffs.empty())
            throw validation_error("test function: polynomial needs at least one coefficient");
        TestFunction f = TestFunction::polynomial(std::move(coeffs));
        f.spec = s;  // keep the user's exact spelling for output rows
        return f;
    }
    throw validation_error("test function: unknown function '" + s + "'");
}

// ---- integration engine ----

LssCalculator::LssCalculator(const BlockModelParams& p, int N, double safety)
    : params_(p) {
    validate_params(p);
    table_.contour = build_contour(p, N, safety);
    build_table(table_.contour.N);
}

LssCalculator::LssCalculator(const BlockModelParams& p, const ContourQuadrature& contour)
    : params_(p) {
    validate_params(p);
    if (!power_of_two(contour.N) || contour.N < 64)
        throw validation_error("contour: N must be a power of two, at least 64");
    table_.contour = contour;
    build_table(contour.N);
}

void LssCalculator::build_table(int N) {
    double radius = table_.contour.radius;
    table_.contour = circle_nodes(radius, N);
    table_.M.assign(N, CVec());
    table_.X.assign(N, CMat());
    table_.mean_diag.assign(N, Complex(0.0, 0.0));
    table_.stieltjes.assign(N, Complex(0.0, 0.0));

    CVec warm;
    for (int j = 0; j < N / 2; ++j) {
        QveOptions opts;
        if (warm.size() > 0) opts.warm_start = &warm;
        QveSolution sol = solve_qve(params_, table_.contour.nodes[j], opts);
        warm = sol.M;
        CMat X = gtgt_matrix(params_, table_.contour.nodes[j], sol.M);
        CVec Y = mean_vector(params_, table_.contour.nodes[j], sol.M, X);
        Complex s(0.0, 0.0);
        for (int l = 0; l < params_.K; ++l)
            s += params_.alpha[l] * sol.M[l];
        int jc = N - 1 - j;
        table_.M[jc] = sol.M.conjugate();
        table_.X[jc] = X.conjugate();
        table_.mean_diag[jc] = std::conj(Y.sum());
        table_.stieltjes[jc] = std::conj(s);
        table_.M[j] = std::move(sol.M);
        table_.X[j] = std::move(X);
        table_.mean_diag[j] = Y.sum();
        table_.stieltjes[j] = s;
    }
    cov_ready_ = false;
    cov_grid_.resize(0, 0);
}

void LssCalculator::ensure_cov_grid() {
    if (cov_ready_) return;
    const int N = table_.contour.N;
    cov_grid_.resize(N, N);
    // Rows with Im z1 > 0 are computed; conjugate rows are mirrored. Each
    // (j1, j2) cell is independent, so the parallel split cannot change values.
    parallel_for(static_cast<std::size_t>(N / 2), [&](std::size_t j1) {
        Complex z1 = table_.contour.nodes[j1];
        const CVec& M1 = table_.M[j1];
        for (int j2 = 0; j2 < N; ++j2) {
            Complex z2 = table_.contour.nodes[j2];
            const CVec& M2 = table_.M[j2];
            const CMat& X2 = table_.X[j2];
            CMat Xt = g1tg2t_matrix(params_, z1, z2, M1, M2);
            WTensor W = w_tensor(params_, z1, z2, M1, M2, X2, Xt);
            CovKernelResult ck = cov_kernel(params_, z1, z2, M1, M2, X2, Xt, W);
            cov_grid_(static_cast<int>(j1), j2) = ck.cov;
        }
    });
    for (int j1 = 0; j1 < N / 2; ++j1)
        for (int j2 = 0; j2 < N; ++j2)
            cov_grid_(N - 1 - j1, N - 1 - j2) = std::conj(cov_grid_(j1, j2));
    cov_ready_ = true;
}

Complex LssCalculator::contour_sum(const std::vector<Complex>& kernel, const TestFunction& f,
                                   bool half) const {
    const int N = table_.contour.N;
    const int stride = half ? 2 : 1;
    const int neff = half ? N / 2 : N;
    KahanSum acc;
    for (int j = 0; j < N; j += stride)
        acc.add(kernel[j] * eval_testfn(f, table_.contour.nodes[j]) * table_.contour.tangents[j]);
    // -(1/2 pi i) * (2 pi / neff) = i / neff
    return Complex(0.0, 1.0) / static_cast<double>(neff) * acc.s;
}

Complex LssCalculator::cov_sum(const TestFunction& f, const TestFunction& g, bool half) const {
    const int N = table_.contour.N;
    const int stride = half ? 2 : 1;
    const int neff = half ? N / 2 : N;
    std::vector<Complex> fw(N), gw(N);
    for (int j = 0; j < N; ++j) {
        fw[j] = eval_testfn(f, table_.contour.nodes[j]) * table_.contour.tangents[j];
        gw[j] = eval_testfn(g, table_.contour.nodes[j]) * table_.contour.tangents[j];
    }
    KahanSum acc;
    for (int j1 = 0; j1 < N; j1 += stride) {
        KahanSum row;
        for (int j2 = 0; j2 < N; j2 += stride)
            row.add(cov_grid_(j1, j2) * gw[j2]);
        acc.add(fw[j1] * row.s);
    }
    // (1/(2 pi i))^2 * (2 pi / neff)^2 = -1 / neff^2
    return -acc.s / (static_cast<double>(neff) * static_cast<double>(neff));
}

double LssCalculator::converge_scalar(const std::function<Complex(bool)>& eval, const char* what) {
    for (;;) {
        Complex full = eval(false);
        Complex half = eval(true);
        if (std::abs(full - half) <= kConvergeTol) {
            if (std::abs(full.imag()) > kImagTol)
                throw numerical_error(std::string(what) + ": imaginary residual exceeds tolerance");
            return full.real();
        }
        if (table_.contour.N >= kMaxNodes)
            throw numerical_error(std::string(what) + ": quadrature did not converge at node cap");
        build_table(2 * table_.contour.N);
    }
}

double LssCalculator::mean(const TestFunction& f) {
    return converge_scalar(
        [&](bool half) { return contour_sum(table_.mean_diag, f, half); }, "mean integral");
}

double LssCalculator::lsd(const TestFunction& f) {
    return converge_scalar(
        [&](bool half) { return contour_sum(table_.stieltjes, f, half); }, "spectral moment");
}

double LssCalculator::cov(const TestFunction& f, const TestFunction& g) {
    return converge_scalar(
        [&](bool half) {
            ensure_cov_grid();
            return cov_sum(f, g, half);
        },
        "covariance integral");
}

Complex LssCalculator::cov_kernel_at(int j1, int j2) {
    ensure_cov_grid();
    return cov_grid_(j1, j2);
}

double mean_lss(const TestFunction& f, const BlockModelParams& p, const ContourQuadrature& c) {
    return LssCalculator(p, c).mean(f);
}

double cov_lss(const TestFunction& f, const TestFunction& g, const BlockModelParams& p,
               const ContourQuadrature& c) {
    return LssCalculator(p, c).cov(f, g);
}

double lsd_integral(const TestFunction& f, const BlockModelParams& p, const ContourQuadrature& c) {
    return LssCalculator(p, c).lsd(f);
}

} // namespace spectral_clt
