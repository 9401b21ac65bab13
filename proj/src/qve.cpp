#include "spectral_clt/qve.hpp"

#include "spectral_clt/errors.hpp"

#include <Eigen/LU>
#include <cmath>

namespace spectral_clt {

QveSolution solve_qve(const BlockModelParams& p, Complex z, const QveOptions& opts) {
    if (z.imag() == 0.0)
        throw validation_error("qve: z must have nonzero imaginary part");
    if (z.imag() < 0.0) {
        QveOptions o2 = opts;
        CVec w0;
        if (opts.warm_start) {
            w0 = opts.warm_start->conjugate();
            o2.warm_start = &w0;
        }
        QveSolution sol = solve_qve(p, std::conj(z), o2);
        sol.M = sol.M.conjugate();
        return sol;
    }

    const int K = p.K;
    const CMat Q2c = p.Q2.cast<Complex>();
    const CVec alphac = p.alpha.cast<Complex>();

    CVec M(K);
    if (opts.warm_start && opts.warm_start->size() == K)
        M = *opts.warm_start;
    else
        M.setConstant(-1.0 / z);

    auto resid = [&](const CVec& Mv) {
        CVec wsum = Q2c * (alphac.array() * Mv.array()).matrix();
        double r = 0.0;
        for (int l = 0; l < K; ++l)
            r = std::max(r, std::abs(1.0 / Mv[l] + z + wsum[l]));
        return r;
    };

    const double theta = opts.damping;
    double r = resid(M);
    double r_checkpoint = r;
    int it = 0;
    bool stalled = false;
    while (it < opts.max_iter && r > opts.tol) {
        CVec wsum = Q2c * (alphac.array() * M.array()).matrix();
        for (int l = 0; l < K; ++l) {
            Complex mnew = -1.0 / (z + wsum[l]);
            M[l] = (1.0 - theta) * M[l] + theta * mnew;
        }
        r = resid(M);
        ++it;
        if (it % 100 == 0) {
            if (r > 0.9 * r_checkpoint) { stalled = true; break; }
            r_checkpoint = r;
        }
    }

    if (r > opts.tol && (stalled || it >= opts.max_iter)) {
        // Newton on F_l = 1/M_l + z + (Q2 (alpha.*M))_l, holomorphic in M.
        for (int nit = 0; nit < 60 && r > opts.tol; ++nit) {
            CVec wsum = Q2c * (alphac.array() * M.array()).matrix();
            CVec F(K);
            for (int l = 0; l < K; ++l)
                F[l] = 1.0 / M[l] + z + wsum[l];
            CMat J = Q2c * alphac.asDiagonal();
            for (int l = 0; l < K; ++l)
                J(l, l) -= 1.0 / (M[l] * M[l]);
            CVec delta = J.partialPivLu().solve(-F);
            double t = 1.0;
            CVec Mtry;
            double rtry = r;
            for (int h = 0; h < 40; ++h) {
                Mtry = M + t * delta;
                rtry = resid(Mtry);
                if (std::isfinite(rtry) && rtry < r) break;
                t *= 0.5;
            }
            if (!(std::isfinite(rtry) && rtry < r)) break;
            M = Mtry;
            r = rtry;
            ++it;
        }
    }

    if (r > opts.tol)
        throw numerical_error("qve: solver did not reach residual tolerance");

    // Very close to the real axis the Newton rescue can settle on the
    // conjugate branch (Im M ~ -Im z). The plain map -1/(z + wsum) sends any
    // point with Im(z + wsum) > 0 strictly into the upper half plane, so
    // undamped iterations both restore the signs and re-converge.
    auto signs_ok = [&] {
        for (int l = 0; l < K; ++l)
            if (M[l].imag() <= 0.0) return false;
        return true;
    };
    if (!signs_ok()) {
        for (int pit = 0; pit < opts.max_iter && (!signs_ok() || r > opts.tol); ++pit) {
            CVec wsum = Q2c * (alphac.array() * M.array()).matrix();
            bool flippable = true;
            for (int l = 0; l < K; ++l)
                if ((z + wsum[l]).imag() <= 0.0) { flippable = false; break; }
            if (!flippable) break;
            for (int l = 0; l < K; ++l)
                M[l] = -1.0 / (z + wsum[l]);
            r = resid(M);
            ++it;
        }
    }

    if (r > opts.tol)
        throw numerical_error("qve: solver did not reach residual tolerance");
    for (int l = 0; l < K; ++l)
        if (M[l].imag() <= 0.0)
            throw numerical_error("qve: solution left the upper half-plane");

    return QveSolution{std::move(M), r, it};
}

Complex stieltjes_total(const BlockModelParams& p, Complex z) {
    QveSolution sol = solve_qve(p, z);
    Complex s = 0.0;
    for (int l = 0; l < p.K; ++l)
        s += p.alpha[l] * sol.M[l];
    return s;
}

double lsd_density(const BlockModelParams& p, double x, double eta) {
    if (eta <= 0.0)
        throw validation_error("lsd_density: eta must be positive");
    return stieltjes_total(p, Complex(x, eta)).imag() / M_PI;
}

SupportEstimate spectral_edge(const BlockModelParams& p, double margin) {
    validate_params(p);
    double crude = 2.0 * std::sqrt((p.Q2 * p.alpha).maxCoeff());
    const double eta = 1e-9;
    const double thresh = 1e-6;
    const double step = 0.01 * std::max(1.0, crude);
    double edge = crude;
    double x = crude;
    while (x > step) {
        double d;
        try {
            d = lsd_density(p, x, eta);
        } catch (const numerical_error&) {
            break;  // solver trouble this deep means we are at the support
        }
        if (d > thresh) break;
        edge = x;
        x -= step;
    }
    return SupportEstimate{edge + margin, margin};
}

} // namespace spectral_clt
