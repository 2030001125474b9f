#include "dfsmc/dictionary.hpp"

#include <algorithm>
#include <cmath>

#include "dfsmc/kernels.hpp"

namespace dfsmc {

Grid build_grid(double lo, double hi, double step) {
    require(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step),
            "build_grid: non-finite bounds");
    require(step > 0.0, "build_grid: step must be positive");
    require(lo < hi, "build_grid: empty range");
    require(step <= hi - lo, "build_grid: step larger than the range");
    // tolerate roundoff when (hi - lo) is an exact multiple of step
    const int segments = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    Grid g;
    g.step = step;
    g.points.resize(segments + 1);
    for (int i = 0; i <= segments; ++i) g.points[i] = lo + i * step;
    return g;
}

DictionaryBlocks build_dictionary(const Grid& grid, const ArrayGeometry& geom) {
    require(grid.size() >= 1, "build_dictionary: empty grid");
    DictionaryBlocks dict;
    dict.geometry = geom;
    dict.grid = grid;
    const int n = geom.num_antennas;
    const int u = grid.size();
    dict.d_stack.resize(n * n, u);
    dict.xi_stack.resize(n * n, u);
    for (int k = 0; k < u; ++k) {
        const CMat d = q_pattern(steering_vector(grid.points[k], geom));
        const CMat xi = q_pattern(steering_derivative(grid.points[k], geom));
        std::copy(d.data.begin(), d.data.end(), dict.d_stack.col(k));
        std::copy(xi.data.begin(), xi.data.end(), dict.xi_stack.col(k));
    }
    return dict;
}

CMat psi_block(const DictionaryBlocks& dict, int u, double nu_u) {
    const int n = dict.n();
    CMat out(n, n);
    const cx* d = dict.d_block(u);
    const cx* xi = dict.xi_block(u);
    for (int i = 0; i < n * n; ++i) out.data[i] = d[i] + nu_u * xi[i];
    return out;
}

namespace {

// out = (D_u + nu_u Xi_u) c, reading the flattened block column by column
void psi_matvec(const DictionaryBlocks& dict, int u, double nu_u, const CVec& c, cx* out) {
    const int n = dict.n();
    std::fill(out, out + n, cx(0.0, 0.0));
    const cx* d = dict.d_block(u);
    const cx* xi = dict.xi_block(u);
    for (int k = 0; k < n; ++k) {
        kernels::active().caxpy(n, c[k], d + static_cast<size_t>(k) * n, out);
        if (nu_u != 0.0)
            kernels::active().caxpy(n, nu_u * c[k], xi + static_cast<size_t>(k) * n, out);
    }
}

}  // namespace

CMat t_matrix(const DictionaryBlocks& dict, const RVec& nu, const CVec& c) {
    require(static_cast<int>(nu.size()) == dict.u(), "t_matrix: offset length != U");
    require(static_cast<int>(c.size()) == dict.n(), "t_matrix: coupling length != N");
    CMat t(dict.n(), dict.u());
    for (int u = 0; u < dict.u(); ++u) psi_matvec(dict, u, nu[u], c, t.col(u));
    return t;
}

CMat p_matrix(const DictionaryBlocks& dict, const RVec& nu, const CVec& w) {
    require(static_cast<int>(nu.size()) == dict.u(), "p_matrix: offset length != U");
    require(static_cast<int>(w.size()) == dict.u(), "p_matrix: weight length != U");
    const int n = dict.n();
    CMat p(n, n);
    const int nn = n * n;
    for (int u = 0; u < dict.u(); ++u) {
        kernels::active().caxpy(nn, w[u], dict.d_block(u), p.data.data());
        const cx wnu = w[u] * nu[u];
        if (wnu != cx(0.0, 0.0)) kernels::active().caxpy(nn, wnu, dict.xi_block(u), p.data.data());
    }
    return p;
}

void clamp_offsets(RVec& nu, double step) {
    const double lim = 0.5 * step;
    for (double& v : nu) v = std::clamp(v, -lim, lim);
}

}  // namespace dfsmc
