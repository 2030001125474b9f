#pragma once

#include <string>
#include <vector>

#include "dfsmc/types.hpp"

namespace dfsmc::kernels {

// Low-level complex kernels. All pointers are std::complex<double> arrays,
// matrices column-major. Each backend implements the same contract; the
// scalar backend is the reference, SIMD backends must match it to roundoff.
struct Backend {
    const char* name;

    // sum_i conj(x[i]) * y[i]
    cx (*cdotc)(int n, const cx* x, const cx* y);

    // sum_i |x[i]|^2
    double (*cnorm2)(int n, const cx* x);

    // y += a * x
    void (*caxpy)(int n, cx a, const cx* x, cx* y);

    // C = alpha * A^H B + beta * C.
    // A is k x m with leading dim lda, B is k x n with ldb, C is m x n with ldc.
    void (*gemm_ct)(int m, int n, int k, cx alpha, const cx* A, int lda,
                    const cx* B, int ldb, cx beta, cx* C, int ldc);
};

extern const Backend scalar_backend;
#if defined(__x86_64__) || defined(_M_X64)
extern const Backend avx2_backend;
#endif
#if defined(__aarch64__)
extern const Backend neon_backend;
#endif

// Active backend, chosen at startup from CPU features (override with the
// DFSMC_KERNELS environment variable or select()).
const Backend& active();

// Force a backend by name ("scalar", "avx2", "neon"). Returns false if the
// name is unknown or unsupported on this CPU.
bool select(const std::string& name);

// Names of backends usable on this machine, reference first.
std::vector<std::string> available();

}  // namespace dfsmc::kernels
