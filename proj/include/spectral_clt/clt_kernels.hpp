#pragma once

#include "spectral_clt/block_model.hpp"
#include "spectral_clt/qve.hpp"

#include <vector>

namespace spectral_clt {

// K x K stability operator at one point:
//   co1(k,l) = Q2(k,l) alpha_k M_k(z) / z - delta_kl / (z M_k(z)).
CMat co1(const BlockModelParams& p, Complex z, const CVec& M);

// Two-point variant; row index carries M(z2), the diagonal carries M(z1):
//   co2(k,l) = Q2(k,l) alpha_k M_k(z2) / z1 - delta_kl / (z1 M_k(z1)).
CMat co2(const BlockModelParams& p, Complex z1, Complex z2, const CVec& M1, const CVec& M2);

// X(z): limit of the normalized two-resolvent traces at equal arguments.
// Closed form X = -(Q2 - Diag(1/(alpha_l M_l^2)))^{-1}; symmetric.
CMat gtgt_matrix(const BlockModelParams& p, Complex z, const CVec& M);

// Same X obtained by solving co1(z) X = -(1/z) Diag(alpha.*M); used to
// cross-check the closed form.
CMat gtgt_from_system(const BlockModelParams& p, Complex z, const CVec& M);

// Xt(z1,z2): two-argument version.
// Closed form Xt = -(Q2 - Diag(1/(alpha_l M_l(z1) M_l(z2))))^{-1}.
CMat g1tg2t_matrix(const BlockModelParams& p, Complex z1, Complex z2,
                   const CVec& M1, const CVec& M2);

CMat g1tg2t_from_system(const BlockModelParams& p, Complex z1, Complex z2,
                        const CVec& M1, const CVec& M2);

// Mean kernel component vector Y(z); the scalar mean kernel is Y.sum().
// Solves co1(z) Y = -(1/z) diag(Q2 X) + (2/z) [alpha_k Q2(k,k) M_k^2]
//                   - (1/z) [sum_l Q4(k,l) alpha_k alpha_l M_k^2 M_l^2].
CVec mean_vector(const BlockModelParams& p, Complex z, const CVec& M, const CMat& X);

// W(l,m,r) = limit of the normalized G(z1) T_l G(z2) T_m G(z2) T_r traces.
// slice[l](r,m) holds W(l,m,r).
struct WTensor {
    std::vector<CMat> slice;
    Complex operator()(int l, int m, int r) const { return slice[l](r, m); }
};

WTensor w_tensor(const BlockModelParams& p, Complex z1, Complex z2,
                 const CVec& M1, const CVec& M2, const CMat& X2, const CMat& Xt);

struct CovKernelResult {
    CMat Z;        // Z(l,m): per-block-pair covariance kernel
    Complex cov;   // Z.sum()
};

// Covariance kernel: solves z1 co1(z1) Z = R with
//   R(l,m) = -2 sum_k Q2(l,k) W(l,m,k) + 2 Q2(l,l) M1_l X2(l,m)
//            - sum_k Q4(l,k) alpha_k M1_l M1_k M2_k X2(l,m)
//            - sum_k Q4(l,k) alpha_l M1_l M1_k M2_l X2(k,m).
CovKernelResult cov_kernel(const BlockModelParams& p, Complex z1, Complex z2,
                           const CVec& M1, const CVec& M2, const CMat& X2,
                           const CMat& Xt, const WTensor& W);

} // namespace spectral_clt
