#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "dfsmc/kernels.hpp"

namespace dfsmc::kernels {

namespace {

const Backend* find(const std::string& name) {
    if (name == "scalar") return &scalar_backend;
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2" && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &avx2_backend;
#endif
#if defined(__aarch64__)
    if (name == "neon") return &neon_backend;
#endif
    return nullptr;
}

const Backend* pick_default() {
    if (const char* env = std::getenv("DFSMC_KERNELS")) {
        if (const Backend* b = find(env)) return b;
        std::fprintf(stderr, "dfsmc: DFSMC_KERNELS=%s not usable, falling back\n", env);
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &avx2_backend;
#endif
#if defined(__aarch64__)
    return &neon_backend;
#endif
    return &scalar_backend;
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = pick_default();  // idempotent; concurrent first calls agree
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

bool select(const std::string& name) {
    const Backend* b = find(name);
    if (!b) return false;
    g_active.store(b, std::memory_order_release);
    return true;
}

std::vector<std::string> available() {
    std::vector<std::string> out{"scalar"};
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) out.push_back("avx2");
#endif
#if defined(__aarch64__)
    out.push_back("neon");
#endif
    return out;
}

}  // namespace dfsmc::kernels
