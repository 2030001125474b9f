// NEON kernels for aarch64. One float64x2_t holds a single complex double
// [re, im]; same two-accumulator scheme as the AVX2 backend.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "dfsmc/kernels.hpp"

namespace dfsmc::kernels {

namespace {

inline float64x2_t swap_lanes(float64x2_t v) { return vextq_f64(v, v, 1); }

cx cdotc_neon(int n, const cx* x, const cx* y) {
    const double* xr = reinterpret_cast<const double*>(x);
    const double* yr = reinterpret_cast<const double*>(y);
    float64x2_t a0 = vdupq_n_f64(0.0), b0 = vdupq_n_f64(0.0);
    float64x2_t a1 = vdupq_n_f64(0.0), b1 = vdupq_n_f64(0.0);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t xv0 = vld1q_f64(xr + 2 * i);
        const float64x2_t yv0 = vld1q_f64(yr + 2 * i);
        const float64x2_t xv1 = vld1q_f64(xr + 2 * i + 2);
        const float64x2_t yv1 = vld1q_f64(yr + 2 * i + 2);
        a0 = vfmaq_f64(a0, xv0, yv0);
        b0 = vfmaq_f64(b0, xv0, swap_lanes(yv0));
        a1 = vfmaq_f64(a1, xv1, yv1);
        b1 = vfmaq_f64(b1, xv1, swap_lanes(yv1));
    }
    float64x2_t a = vaddq_f64(a0, a1);
    float64x2_t b = vaddq_f64(b0, b1);
    // re = sum of lanes of x*y; im = lane0 - lane1 of x*swap(y)
    double re = vaddvq_f64(a);
    double im = vgetq_lane_f64(b, 0) - vgetq_lane_f64(b, 1);
    for (; i < n; ++i) {
        const double ar = x[i].real(), ai = x[i].imag();
        const double cr = y[i].real(), ci = y[i].imag();
        re += ar * cr + ai * ci;
        im += ar * ci - ai * cr;
    }
    return cx(re, im);
}

double cnorm2_neon(int n, const cx* x) {
    const double* xr = reinterpret_cast<const double*>(x);
    const int nd = 2 * n;
    float64x2_t acc = vdupq_n_f64(0.0);
    int i = 0;
    for (; i + 2 <= nd; i += 2) {
        const float64x2_t v = vld1q_f64(xr + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double s = vaddvq_f64(acc);
    for (; i < nd; ++i) s += xr[i] * xr[i];
    return s;
}

void caxpy_neon(int n, cx a, const cx* x, cx* y) {
    const double* xr = reinterpret_cast<const double*>(x);
    double* yr = reinterpret_cast<double*>(y);
    const double ar = a.real(), ai = a.imag();
    // a*x = [ar*xr - ai*xi, ar*xi + ai*xr]: fma with lane signs via negated ai lane0
    const float64x2_t arv = vdupq_n_f64(ar);
    const float64x2_t aiv = {-ai, ai};
    for (int i = 0; i < n; ++i) {
        const float64x2_t xv = vld1q_f64(xr + 2 * i);
        float64x2_t t = vld1q_f64(yr + 2 * i);
        t = vfmaq_f64(t, arv, xv);
        t = vfmaq_f64(t, aiv, swap_lanes(xv));
        vst1q_f64(yr + 2 * i, t);
    }
}

void gemm_ct_neon(int m, int n, int k, cx alpha, const cx* A, int lda,
                  const cx* B, int ldb, cx beta, cx* C, int ldc) {
    const bool beta0 = beta == cx(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        const cx* bj = B + static_cast<size_t>(j) * ldb;
        cx* cj = C + static_cast<size_t>(j) * ldc;
        for (int i = 0; i < m; ++i) {
            const cx s = cdotc_neon(k, A + static_cast<size_t>(i) * lda, bj);
            cj[i] = beta0 ? alpha * s : alpha * s + beta * cj[i];
        }
    }
}

}  // namespace

const Backend neon_backend = {
    "neon", cdotc_neon, cnorm2_neon, caxpy_neon, gemm_ct_neon,
};

}  // namespace dfsmc::kernels

#endif  // __aarch64__
