#pragma once

#include "spectral_clt/block_model.hpp"

#include <Eigen/Core>
#include <complex>

namespace spectral_clt {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct QveOptions {
    double tol = 1e-12;       // max-norm residual target
    int max_iter = 10000;     // damped fixed-point budget
    double damping = 0.5;
    const CVec* warm_start = nullptr;
};

struct QveSolution {
    CVec M;
    double residual = 0.0;
    int iterations = 0;
};

// Solves -1/M_l = z + sum_m Q2(l,m) alpha_m M_m for the unique solution with
// Im M_l > 0 when Im z > 0. For Im z < 0 solves at conj(z) and conjugates,
// so M(conj z) == conj(M(z)) exactly. Damped fixed point with Newton
// fallback when progress stalls. Throws validation_error for real z,
// numerical_error if the residual target is unreachable.
QveSolution solve_qve(const BlockModelParams& p, Complex z, const QveOptions& opts = {});

// sum_l alpha_l M_l(z): Stieltjes transform of the limiting spectral measure.
Complex stieltjes_total(const BlockModelParams& p, Complex z);

// (1/pi) Im of the Stieltjes transform at x + i eta; eta > 0 required.
double lsd_density(const BlockModelParams& p, double x, double eta);

struct SupportEstimate {
    double edge = 0.0;    // half-width: support is inside [-edge, edge]
    double margin = 0.0;
};

// Crude bound 2 sqrt(max_k sum_l alpha_l Q2(k,l)) refined by scanning the
// smeared density inward until it rises above 1e-6. Result encloses the
// support and never exceeds crude + margin.
SupportEstimate spectral_edge(const BlockModelParams& p, double margin = 0.0);

} // namespace spectral_clt
