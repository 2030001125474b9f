// AVX2/FMA kernels. Layout: a __m256d holds two interleaved complex doubles
// [re0 im0 re1 im1]. For a conjugated dot, accumulate x*y and x*swap(y)
// separately:
//   conj(a+jb)(c+jd) = (ac + bd) + j(ad - bc)
// lanes of x*y sum to the real part; lanes of x*swap(y) are [ad, bc], so the
// imaginary part is the alternating-sign sum, applied once at reduction.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "dfsmc/kernels.hpp"

namespace dfsmc::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// flips the sign of odd lanes: [a, -b, c, -d]
inline __m256d negate_odd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(
        _mm256_set_epi64x(0x8000000000000000LL, 0, 0x8000000000000000LL, 0));
    return _mm256_xor_pd(v, mask);
}

inline cx reduce_pair(__m256d acc_a, __m256d acc_b) {
    return cx(hsum(acc_a), hsum(negate_odd(acc_b)));
}

inline cx cdotc_tail(int n, const cx* x, const cx* y) {
    double re = 0.0, im = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = x[i].real(), b = x[i].imag();
        const double c = y[i].real(), d = y[i].imag();
        re += a * c + b * d;
        im += a * d - b * c;
    }
    return cx(re, im);
}

cx cdotc_avx2(int n, const cx* x, const cx* y) {
    const double* xr = reinterpret_cast<const double*>(x);
    const double* yr = reinterpret_cast<const double*>(y);
    __m256d a0 = _mm256_setzero_pd(), b0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd(), b1 = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv0 = _mm256_loadu_pd(xr + 2 * i);
        const __m256d yv0 = _mm256_loadu_pd(yr + 2 * i);
        const __m256d xv1 = _mm256_loadu_pd(xr + 2 * i + 4);
        const __m256d yv1 = _mm256_loadu_pd(yr + 2 * i + 4);
        a0 = _mm256_fmadd_pd(xv0, yv0, a0);
        b0 = _mm256_fmadd_pd(xv0, _mm256_permute_pd(yv0, 0x5), b0);
        a1 = _mm256_fmadd_pd(xv1, yv1, a1);
        b1 = _mm256_fmadd_pd(xv1, _mm256_permute_pd(yv1, 0x5), b1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xr + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yr + 2 * i);
        a0 = _mm256_fmadd_pd(xv, yv, a0);
        b0 = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), b0);
    }
    cx s = reduce_pair(_mm256_add_pd(a0, a1), _mm256_add_pd(b0, b1));
    if (i < n) s += cdotc_tail(n - i, x + i, y + i);
    return s;
}

double cnorm2_avx2(int n, const cx* x) {
    const double* xr = reinterpret_cast<const double*>(x);
    const int nd = 2 * n;
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    int i = 0;
    for (; i + 8 <= nd; i += 8) {
        const __m256d v0 = _mm256_loadu_pd(xr + i);
        const __m256d v1 = _mm256_loadu_pd(xr + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < nd; ++i) s += xr[i] * xr[i];
    return s;
}

void caxpy_avx2(int n, cx a, const cx* x, cx* y) {
    const double* xr = reinterpret_cast<const double*>(x);
    double* yr = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xr + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yr + 2 * i);
        // a*x = [ar*xr - ai*xi, ar*xi + ai*xr]
        const __m256d t = _mm256_mul_pd(ai, _mm256_permute_pd(xv, 0x5));
        const __m256d ax = _mm256_fmaddsub_pd(ar, xv, t);
        _mm256_storeu_pd(yr + 2 * i, _mm256_add_pd(yv, ax));
    }
    for (; i < n; ++i) {
        const double c = x[i].real(), d = x[i].imag();
        yr[2 * i] += a.real() * c - a.imag() * d;
        yr[2 * i + 1] += a.real() * d + a.imag() * c;
    }
}

// 4 rows of C at a time: one load of the B column feeds 8 FMA chains.
void gemm_ct_avx2(int m, int n, int k, cx alpha, const cx* A, int lda,
                  const cx* B, int ldb, cx beta, cx* C, int ldc) {
    const bool beta0 = beta == cx(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        const cx* bj = B + static_cast<size_t>(j) * ldb;
        const double* br = reinterpret_cast<const double*>(bj);
        cx* cj = C + static_cast<size_t>(j) * ldc;
        int i = 0;
        for (; i + 4 <= m; i += 4) {
            const double* a0 = reinterpret_cast<const double*>(A + static_cast<size_t>(i) * lda);
            const double* a1 = reinterpret_cast<const double*>(A + static_cast<size_t>(i + 1) * lda);
            const double* a2 = reinterpret_cast<const double*>(A + static_cast<size_t>(i + 2) * lda);
            const double* a3 = reinterpret_cast<const double*>(A + static_cast<size_t>(i + 3) * lda);
            __m256d ra0 = _mm256_setzero_pd(), rb0 = _mm256_setzero_pd();
            __m256d ra1 = _mm256_setzero_pd(), rb1 = _mm256_setzero_pd();
            __m256d ra2 = _mm256_setzero_pd(), rb2 = _mm256_setzero_pd();
            __m256d ra3 = _mm256_setzero_pd(), rb3 = _mm256_setzero_pd();
            int p = 0;
            for (; p + 2 <= k; p += 2) {
                const __m256d yv = _mm256_loadu_pd(br + 2 * p);
                const __m256d sy = _mm256_permute_pd(yv, 0x5);
                __m256d xv;
                xv = _mm256_loadu_pd(a0 + 2 * p);
                ra0 = _mm256_fmadd_pd(xv, yv, ra0);
                rb0 = _mm256_fmadd_pd(xv, sy, rb0);
                xv = _mm256_loadu_pd(a1 + 2 * p);
                ra1 = _mm256_fmadd_pd(xv, yv, ra1);
                rb1 = _mm256_fmadd_pd(xv, sy, rb1);
                xv = _mm256_loadu_pd(a2 + 2 * p);
                ra2 = _mm256_fmadd_pd(xv, yv, ra2);
                rb2 = _mm256_fmadd_pd(xv, sy, rb2);
                xv = _mm256_loadu_pd(a3 + 2 * p);
                ra3 = _mm256_fmadd_pd(xv, yv, ra3);
                rb3 = _mm256_fmadd_pd(xv, sy, rb3);
            }
            cx s0 = reduce_pair(ra0, rb0);
            cx s1 = reduce_pair(ra1, rb1);
            cx s2 = reduce_pair(ra2, rb2);
            cx s3 = reduce_pair(ra3, rb3);
            if (p < k) {
                const int t = k - p;
                const cx* xp = reinterpret_cast<const cx*>(br) + p;
                s0 += cdotc_tail(t, A + static_cast<size_t>(i) * lda + p, xp);
                s1 += cdotc_tail(t, A + static_cast<size_t>(i + 1) * lda + p, xp);
                s2 += cdotc_tail(t, A + static_cast<size_t>(i + 2) * lda + p, xp);
                s3 += cdotc_tail(t, A + static_cast<size_t>(i + 3) * lda + p, xp);
            }
            if (beta0) {
                cj[i] = alpha * s0;
                cj[i + 1] = alpha * s1;
                cj[i + 2] = alpha * s2;
                cj[i + 3] = alpha * s3;
            } else {
                cj[i] = alpha * s0 + beta * cj[i];
                cj[i + 1] = alpha * s1 + beta * cj[i + 1];
                cj[i + 2] = alpha * s2 + beta * cj[i + 2];
                cj[i + 3] = alpha * s3 + beta * cj[i + 3];
            }
        }
        for (; i < m; ++i) {
            const cx s = cdotc_avx2(k, A + static_cast<size_t>(i) * lda, bj);
            cj[i] = beta0 ? alpha * s : alpha * s + beta * cj[i];
        }
    }
}

}  // namespace

const Backend avx2_backend = {
    "avx2", cdotc_avx2, cnorm2_avx2, caxpy_avx2, gemm_ct_avx2,
};

}  // namespace dfsmc::kernels

#endif  // x86_64
