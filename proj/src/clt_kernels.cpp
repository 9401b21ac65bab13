#include "spectral_clt/clt_kernels.hpp"

#include "spectral_clt/errors.hpp"

#include <Eigen/LU>

namespace spectral_clt {

namespace {

constexpr double kRcondFloor = 1e-12;

void check_rcond(const Eigen::PartialPivLU<CMat>& lu, const char* what) {
    double rc = lu.rcond();
    if (!(rc > kRcondFloor))
        throw numerical_error(std::string("contour too close to spectrum: ill-conditioned ") + what);
}

} // namespace

CMat co1(const BlockModelParams& p, Complex z, const CVec& M) {
    const int K = p.K;
    CMat C = p.Q2.cast<Complex>();
    for (int k = 0; k < K; ++k)
        C.row(k) *= p.alpha[k] * M[k] / z;
    for (int k = 0; k < K; ++k)
        C(k, k) -= 1.0 / (z * M[k]);
    return C;
}

CMat co2(const BlockModelParams& p, Complex z1, Complex z2, const CVec& M1, const CVec& M2) {
    (void)z2;
    const int K = p.K;
    CMat C = p.Q2.cast<Complex>();
    for (int k = 0; k < K; ++k)
        C.row(k) *= p.alpha[k] * M2[k] / z1;
    for (int k = 0; k < K; ++k)
        C(k, k) -= 1.0 / (z1 * M1[k]);
    return C;
}

CMat gtgt_matrix(const BlockModelParams& p, Complex z, const CVec& M) {
    (void)z;
    const int K = p.K;
    CMat A = p.Q2.cast<Complex>();
    for (int l = 0; l < K; ++l)
        A(l, l) -= 1.0 / (p.alpha[l] * M[l] * M[l]);
    Eigen::PartialPivLU<CMat> lu(A);
    check_rcond(lu, "equal-argument kernel matrix");
    return -lu.inverse();
}

CMat gtgt_from_system(const BlockModelParams& p, Complex z, const CVec& M) {
    const int K = p.K;
    CMat C = co1(p, z, M);
    CMat rhs = CMat::Zero(K, K);
    for (int k = 0; k < K; ++k)
        rhs(k, k) = -p.alpha[k] * M[k] / z;
    Eigen::PartialPivLU<CMat> lu(C);
    check_rcond(lu, "stability operator");
    return lu.solve(rhs);
}

CMat g1tg2t_matrix(const BlockModelParams& p, Complex z1, Complex z2,
                   const CVec& M1, const CVec& M2) {
    (void)z1;
    (void)z2;
    const int K = p.K;
    CMat A = p.Q2.cast<Complex>();
    for (int l = 0; l < K; ++l)
        A(l, l) -= 1.0 / (p.alpha[l] * M1[l] * M2[l]);
    Eigen::PartialPivLU<CMat> lu(A);
    check_rcond(lu, "two-argument kernel matrix");
    return -lu.inverse();
}

CMat g1tg2t_from_system(const BlockModelParams& p, Complex z1, Complex z2,
                        const CVec& M1, const CVec& M2) {
    const int K = p.K;
    CMat C = co2(p, z1, z2, M1, M2);
    CMat rhs = CMat::Zero(K, K);
    for (int k = 0; k < K; ++k)
        rhs(k, k) = -p.alpha[k] * M2[k] / z1;
    Eigen::PartialPivLU<CMat> lu(C);
    check_rcond(lu, "two-argument stability operator");
    return lu.solve(rhs);
}

CVec mean_vector(const BlockModelParams& p, Complex z, const CVec& M, const CMat& X) {
    const int K = p.K;
    const CMat Q2c = p.Q2.cast<Complex>();
    const CMat Q4c = p.Q4.cast<Complex>();

    CVec am2(K);  // alpha_l M_l^2
    for (int l = 0; l < K; ++l)
        am2[l] = p.alpha[l] * M[l] * M[l];

    CVec q4sum = Q4c * am2;  // sum_l Q4(k,l) alpha_l M_l^2
    CVec rhs(K);
    CMat Q2X = Q2c * X;
    for (int k = 0; k < K; ++k) {
        rhs[k] = -Q2X(k, k) / z
                 + 2.0 * p.alpha[k] * p.Q2(k, k) * M[k] * M[k] / z
                 - am2[k] * q4sum[k] / z;
    }

    CMat C = co1(p, z, M);
    Eigen::PartialPivLU<CMat> lu(C);
    check_rcond(lu, "stability operator");
    return lu.solve(rhs);
}

WTensor w_tensor(const BlockModelParams& p, Complex z1, Complex z2,
                 const CVec& M1, const CVec& M2, const CMat& X2, const CMat& Xt) {
    (void)z2;
    const int K = p.K;
    CMat A = z1 * co2(p, z1, z2, M1, M2);
    Eigen::PartialPivLU<CMat> lu(A);
    check_rcond(lu, "two-argument stability operator");

    CMat P = Xt * p.Q2.cast<Complex>();  // P(l,r) = sum_k Xt(l,k) Q2(k,r)

    WTensor W;
    W.slice.resize(K);
    CMat rhs(K, K);
    for (int l = 0; l < K; ++l) {
        for (int m = 0; m < K; ++m)
            for (int r = 0; r < K; ++r)
                rhs(r, m) = -P(l, r) * X2(m, r) - (r == l ? X2(l, m) : Complex(0.0));
        W.slice[l] = lu.solve(rhs);
    }
    return W;
}

CovKernelResult cov_kernel(const BlockModelParams& p, Complex z1, Complex z2,
                           const CVec& M1, const CVec& M2, const CMat& X2,
                           const CMat& Xt, const WTensor& W) {
    (void)z2;
    (void)Xt;
    const int K = p.K;
    const CMat Q2c = p.Q2.cast<Complex>();
    const CMat Q4c = p.Q4.cast<Complex>();

    CVec a(K);  // a_l = sum_k Q4(l,k) alpha_k M1_k M2_k
    for (int l = 0; l < K; ++l) {
        Complex s = 0.0;
        for (int k = 0; k < K; ++k)
            s += p.Q4(l, k) * p.alpha[k] * M1[k] * M2[k];
        a[l] = s;
    }
    CMat B(K, K);  // B(l,k) = Q4(l,k) alpha_l M1_l M1_k M2_l
    for (int l = 0; l < K; ++l)
        for (int k = 0; k < K; ++k)
            B(l, k) = Q4c(l, k) * p.alpha[l] * M1[l] * M1[k] * M2[l];
    CMat BX = B * X2;

    CMat R(K, K);
    for (int l = 0; l < K; ++l) {
        // wsum(m) = sum_k Q2(l,k) W(l,m,k)
        Eigen::RowVectorXcd wsum = Q2c.row(l) * W.slice[l];
        for (int m = 0; m < K; ++m) {
            R(l, m) = -2.0 * wsum(m)
                      + 2.0 * p.Q2(l, l) * M1[l] * X2(l, m)
                      - a[l] * M1[l] * X2(l, m)
                      - BX(l, m);
        }
    }

    CMat A = z1 * co1(p, z1, M1);
    Eigen::PartialPivLU<CMat> lu(A);
    check_rcond(lu, "stability operator");
    CovKernelResult res;
    res.Z = lu.solve(R);
    res.cov = res.Z.sum();
    return res;
}

} // namespace spectral_clt
