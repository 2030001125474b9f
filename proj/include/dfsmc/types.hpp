#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dfsmc {

using cx = std::complex<double>;

// Column-major complex matrix. Storage is contiguous, column stride = rows.
// Kernels view columns as interleaved re/im doubles, which std::complex
// guarantees to be layout-compatible with.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<cx> data;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    cx& operator()(int i, int j) { return data[static_cast<size_t>(j) * rows + i]; }
    const cx& operator()(int i, int j) const { return data[static_cast<size_t>(j) * rows + i]; }

    cx* col(int j) { return data.data() + static_cast<size_t>(j) * rows; }
    const cx* col(int j) const { return data.data() + static_cast<size_t>(j) * rows; }

    void set_zero() { std::fill(data.begin(), data.end(), cx(0.0, 0.0)); }
    void resize(int r, int c) {
        rows = r;
        cols = c;
        data.assign(static_cast<size_t>(r) * c, cx(0.0, 0.0));
    }
};

// Column-major real matrix (used for the real SPD systems).
struct RMat {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    RMat() = default;
    RMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return data[static_cast<size_t>(j) * rows + i]; }
    const double& operator()(int i, int j) const { return data[static_cast<size_t>(j) * rows + i]; }
    double* col(int j) { return data.data() + static_cast<size_t>(j) * rows; }
    const double* col(int j) const { return data.data() + static_cast<size_t>(j) * rows; }
};

using CVec = std::vector<cx>;
using RVec = std::vector<double>;

inline void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace dfsmc
