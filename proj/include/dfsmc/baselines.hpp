#pragma once

#include "dfsmc/array_model.hpp"
#include "dfsmc/dfsmc.hpp"
#include "dfsmc/dictionary.hpp"
#include "dfsmc/types.hpp"

namespace dfsmc {

struct CovarianceEstimate {
    CMat matrix;  // N x N Hermitian (symmetrized)
};

struct MusicResult {
    RVec spectrum;  // length U pseudospectrum
    RVec picked;    // K directions (radians), ascending
};

// R = (1/M) Y Y^H, Hermitian enforced by symmetrization.
CovarianceEstimate sample_covariance(const CMat& y);

// Subspace pseudospectrum 1 / ||E_n^H a(zeta_u)||^2 with E_n spanning the
// N-K smallest eigenvalues; picked = K strongest local maxima on the grid.
MusicResult music_spectrum(const CovarianceEstimate& r, const Grid& grid,
                           const ArrayGeometry& geom, int k);

// Reductions of the full engine: identical schedule and flag logic, with the
// coupling update (and for on-grid also the offset update) suppressed.
RunOutput run_sbl_on_grid(const CMat& y, const DictionaryBlocks& dict, const Hyperparams& hp,
                          const Schedule& sched, RunOptions opt = {});
RunOutput run_sbl_off_grid(const CMat& y, const DictionaryBlocks& dict, const Hyperparams& hp,
                           const Schedule& sched, RunOptions opt = {});

}  // namespace dfsmc
