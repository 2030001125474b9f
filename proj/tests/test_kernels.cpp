#include <doctest.h>

#include <cmath>
#include <vector>

#include <dfsmc/kernels.hpp>
#include <dfsmc/rng.hpp>

using namespace dfsmc;
using kernels::Backend;

namespace {

CVec random_vec(int n, RandomStream& rng) {
    CVec v(n);
    for (auto& x : v) x = cx(rng.normal(), rng.normal());
    return v;
}

// reference C = alpha A^H B + beta C with explicit index arithmetic
void gemm_ct_naive(int m, int n, int k, cx alpha, const cx* a, int lda, const cx* b, int ldb,
                   cx beta, cx* c, int ldc) {
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            cx acc(0.0, 0.0);
            for (int l = 0; l < k; ++l) acc += std::conj(a[i * lda + l]) * b[j * ldb + l];
            c[j * ldc + i] = alpha * acc + beta * c[j * ldc + i];
        }
    }
}

std::vector<const Backend*> backends_under_test() {
    std::vector<const Backend*> out{&kernels::scalar_backend};
#if defined(__x86_64__) || defined(_M_X64)
    if (kernels::select("avx2")) out.push_back(&kernels::avx2_backend);
#endif
#if defined(__aarch64__)
    if (kernels::select("neon")) out.push_back(&kernels::neon_backend);
#endif
    kernels::select("scalar");
    return out;
}

}  // namespace

TEST_CASE("cdotc and cnorm2 match direct summation on every backend") {
    RandomStream rng(11);
    for (const Backend* be : backends_under_test()) {
        for (int n : {1, 2, 3, 7, 8, 15, 64, 257}) {
            CVec x = random_vec(n, rng), y = random_vec(n, rng);
            cx want(0.0, 0.0);
            double want2 = 0.0;
            for (int i = 0; i < n; ++i) {
                want += std::conj(x[i]) * y[i];
                want2 += std::norm(x[i]);
            }
            cx got = be->cdotc(n, x.data(), y.data());
            CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
            CHECK(be->cnorm2(n, x.data()) ==
                  doctest::Approx(want2).epsilon(1e-12));
        }
    }
}

TEST_CASE("caxpy matches direct update on every backend") {
    RandomStream rng(12);
    for (const Backend* be : backends_under_test()) {
        for (int n : {1, 4, 9, 32, 101}) {
            CVec x = random_vec(n, rng), y = random_vec(n, rng);
            cx a(rng.normal(), rng.normal());
            CVec want = y;
            for (int i = 0; i < n; ++i) want[i] += a * x[i];
            be->caxpy(n, a, x.data(), y.data());
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(y[i] - want[i]) <= 1e-12 * (1.0 + std::abs(want[i])));
        }
    }
}

TEST_CASE("gemm_ct matches the naive triple loop, including beta != 0 and padded strides") {
    RandomStream rng(13);
    struct Shape {
        int m, n, k, pad_a, pad_b, pad_c;
    };
    const Shape shapes[] = {{1, 1, 1, 0, 0, 0}, {2, 3, 4, 0, 0, 0},  {5, 5, 5, 0, 0, 0},
                            {8, 8, 8, 0, 0, 0}, {3, 7, 16, 2, 1, 3}, {13, 11, 9, 1, 2, 1},
                            {1, 6, 33, 4, 0, 2}};
    const cx alphas[] = {cx(1, 0), cx(0.5, -2.0)};
    const cx betas[] = {cx(0, 0), cx(1, 0), cx(-0.25, 0.75)};
    for (const Backend* be : backends_under_test()) {
        for (const Shape& s : shapes) {
            const int lda = s.k + s.pad_a, ldb = s.k + s.pad_b, ldc = s.m + s.pad_c;
            CVec a = random_vec(lda * s.m, rng);
            CVec b = random_vec(ldb * s.n, rng);
            CVec c0 = random_vec(ldc * s.n, rng);
            for (cx alpha : alphas) {
                for (cx beta : betas) {
                    CVec got = c0, want = c0;
                    be->gemm_ct(s.m, s.n, s.k, alpha, a.data(), lda, b.data(), ldb, beta,
                                got.data(), ldc);
                    gemm_ct_naive(s.m, s.n, s.k, alpha, a.data(), lda, b.data(), ldb, beta,
                                  want.data(), ldc);
                    for (int j = 0; j < s.n; ++j) {
                        for (int i = 0; i < ldc; ++i) {
                            const cx g = got[j * ldc + i], w = want[j * ldc + i];
                            CHECK(std::abs(g - w) <=
                                  1e-11 * (1.0 + std::abs(w)));  // pad rows untouched too
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("simd backends agree with scalar to roundoff on large problems") {
    RandomStream rng(14);
    const auto bes = backends_under_test();
    if (bes.size() < 2) return;  // nothing to compare on this machine
    const int m = 37, n = 29, k = 111;
    CVec a = random_vec(k * m, rng), b = random_vec(k * n, rng), c0 = random_vec(m * n, rng);
    CVec ref = c0;
    kernels::scalar_backend.gemm_ct(m, n, k, cx(1.0, 0.0), a.data(), k, b.data(), k,
                                    cx(0.5, 0.5), ref.data(), m);
    for (size_t bi = 1; bi < bes.size(); ++bi) {
        CVec got = c0;
        bes[bi]->gemm_ct(m, n, k, cx(1.0, 0.0), a.data(), k, b.data(), k, cx(0.5, 0.5),
                         got.data(), m);
        for (int i = 0; i < m * n; ++i)
            CHECK(std::abs(got[i] - ref[i]) <= 1e-11 * (1.0 + std::abs(ref[i])));
    }
}

TEST_CASE("backend selection is sticky and reports the active name") {
    REQUIRE(kernels::select("scalar"));
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK_FALSE(kernels::select("no-such-backend"));
    CHECK(std::string(kernels::active().name) == "scalar");
    // restore the best backend for the remaining tests
    const auto names = kernels::available();
    REQUIRE_FALSE(names.empty());
    CHECK(kernels::select(names.back()));
}
