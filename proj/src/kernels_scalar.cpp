// Reference kernels: plain loops over interleaved re/im doubles. These define
// the semantics the SIMD backends are tested against.

#include "dfsmc/kernels.hpp"

namespace dfsmc::kernels {

namespace {

cx cdotc_scalar(int n, const cx* x, const cx* y) {
    const double* xr = reinterpret_cast<const double*>(x);
    const double* yr = reinterpret_cast<const double*>(y);
    double acc_re = 0.0, acc_im = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = xr[2 * i], b = xr[2 * i + 1];
        const double c = yr[2 * i], d = yr[2 * i + 1];
        // conj(a+jb) * (c+jd) = (ac + bd) + j(ad - bc)
        acc_re += a * c + b * d;
        acc_im += a * d - b * c;
    }
    return cx(acc_re, acc_im);
}

double cnorm2_scalar(int n, const cx* x) {
    const double* xr = reinterpret_cast<const double*>(x);
    double acc = 0.0;
    for (int i = 0; i < 2 * n; ++i) acc += xr[i] * xr[i];
    return acc;
}

void caxpy_scalar(int n, cx a, const cx* x, cx* y) {
    const double ar = a.real(), ai = a.imag();
    const double* xr = reinterpret_cast<const double*>(x);
    double* yr = reinterpret_cast<double*>(y);
    for (int i = 0; i < n; ++i) {
        const double c = xr[2 * i], d = xr[2 * i + 1];
        yr[2 * i] += ar * c - ai * d;
        yr[2 * i + 1] += ar * d + ai * c;
    }
}

void gemm_ct_scalar(int m, int n, int k, cx alpha, const cx* A, int lda,
                    const cx* B, int ldb, cx beta, cx* C, int ldc) {
    for (int j = 0; j < n; ++j) {
        const cx* bj = B + static_cast<size_t>(j) * ldb;
        cx* cj = C + static_cast<size_t>(j) * ldc;
        for (int i = 0; i < m; ++i) {
            const cx s = cdotc_scalar(k, A + static_cast<size_t>(i) * lda, bj);
            cj[i] = alpha * s + (beta == cx(0.0, 0.0) ? cx(0.0, 0.0) : beta * cj[i]);
        }
    }
}

}  // namespace

const Backend scalar_backend = {
    "scalar", cdotc_scalar, cnorm2_scalar, caxpy_scalar, gemm_ct_scalar,
};

}  // namespace dfsmc::kernels
