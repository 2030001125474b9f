#include "dfsmc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dfsmc/kernels.hpp"
#include "dfsmc/linalg.hpp"
#include "dfsmc/metrics.hpp"

namespace dfsmc {

using kernels::active;

CovarianceEstimate sample_covariance(const CMat& y) {
    require(y.cols >= 1, "sample_covariance: need at least one snapshot");
    const int n = y.rows, m = y.cols;
    const CMat yh = linalg::ctranspose(y);
    CovarianceEstimate est;
    est.matrix.resize(n, n);
    // Y Y^H = (Y^H)^H (Y^H)
    active().gemm_ct(n, n, m, cx(1.0 / m, 0.0), yh.data.data(), m, yh.data.data(), m,
                     cx(0.0, 0.0), est.matrix.data.data(), n);
    for (int j = 0; j < n; ++j) {
        est.matrix(j, j) = cx(est.matrix(j, j).real(), 0.0);
        for (int i = 0; i < j; ++i) {
            const cx v = 0.5 * (est.matrix(i, j) + std::conj(est.matrix(j, i)));
            est.matrix(i, j) = v;
            est.matrix(j, i) = std::conj(v);
        }
    }
    return est;
}

MusicResult music_spectrum(const CovarianceEstimate& r, const Grid& grid,
                           const ArrayGeometry& geom, int k) {
    const int n = r.matrix.rows;
    require(k >= 1 && k < n, "music_spectrum: need 1 <= K < N");
    const linalg::EigH eig = linalg::eig_hermitian(r.matrix);  // ascending eigenvalues
    const int noise_dim = n - k;
    MusicResult res;
    res.spectrum.resize(grid.size());
    for (int u = 0; u < grid.size(); ++u) {
        const CVec a = steering_vector(grid.points[u], geom);
        double den = 0.0;
        for (int j = 0; j < noise_dim; ++j)
            den += std::norm(active().cdotc(n, eig.vectors.col(j), a.data()));
        // keep the spectrum finite when the projection underflows to zero
        res.spectrum[u] = 1.0 / std::max(den, std::numeric_limits<double>::min());
    }
    res.picked = pick_peaks(res.spectrum, {}, grid, k);
    return res;
}

RunOutput run_sbl_on_grid(const CMat& y, const DictionaryBlocks& dict, const Hyperparams& hp,
                          const Schedule& sched, RunOptions opt) {
    opt.mode = EngineMode::on_grid;
    return run_dfsmc(y, dict, hp, sched, opt);
}

RunOutput run_sbl_off_grid(const CMat& y, const DictionaryBlocks& dict, const Hyperparams& hp,
                           const Schedule& sched, RunOptions opt) {
    opt.mode = EngineMode::off_grid_no_coupling;
    return run_dfsmc(y, dict, hp, sched, opt);
}

}  // namespace dfsmc
