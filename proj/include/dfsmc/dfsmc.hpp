#pragma once

#include <vector>

#include "dfsmc/dictionary.hpp"
#include "dfsmc/linalg.hpp"

namespace dfsmc {

// Gamma hyperpriors: (a,b) noise precision, (c,d) signal precisions,
// (e,f) coupling precisions. Defaults follow b = d = f = 1e-3, a = c = e = 1+b.
struct Hyperparams {
    double a = 1.001, b = 1e-3;
    double c = 1.001, d = 1e-3;
    double e = 1.001, f = 1e-3;
    void validate() const;
};

// n1 total EM iterations; from iteration n2 on, coupling and offset phases
// alternate, the phase counter flipping when it reaches n3.
struct Schedule {
    int n1 = 1000;
    int n2 = 300;
    int n3 = 50;
    void validate() const;
};

enum class EngineMode { full, on_grid, off_grid_no_coupling };

struct PosteriorState {
    CMat mu;               // U x M posterior means
    CMat sigma_x;          // U x U posterior covariance (snapshot-shared)
    double alpha_n = 0.0;  // noise precision
    RVec iota;             // U signal precisions
    RVec vartheta;         // N coupling precisions
    CVec c;                // N coupling estimate
    RVec nu;               // U offsets (radians), |nu_u| <= step/2
};

struct LikelihoodTerms {
    double g1 = 0.0;  // Tr{T^H T Sigma_X}
    RVec g2;          // per snapshot ||y_m - T mu_m||^2
    double g3 = 0.0;  // sum_n vartheta_n |c_n|^2
};

// phase: 'w' parameters only, 'c' coupling update, 'o' offset update,
// 'b' both (the iteration where the offset phase hands over to coupling).
struct TraceRow {
    int iter = 0;
    char phase = 'w';
    double alpha_n = 0.0;
    double spec_change = 0.0;  // Linf change of P_X vs the previous iteration
};

struct SpectrumResult {
    RVec power;    // U: P_X,u = 1 / iota_u
    RVec offsets;  // U: final offsets (radians)
    RVec picked;   // peak directions, ascending radians (filled by pick_peaks)
};

struct RunOptions {
    EngineMode mode = EngineMode::full;
    bool certify = false;  // also compute per-iteration posterior residuals
    double cond_limit = 1e14;
    double ridge_rel = 1e-10;
};

struct RunOutput {
    SpectrumResult spectrum;
    PosteriorState state;
    std::vector<TraceRow> trace;
    int ridge_events = 0;
    // worst relative residuals of the linear solves across the run;
    // the posterior pair is only populated when certify is on
    double max_resid_c = 0.0;
    double max_resid_nu = 0.0;
    double max_resid_mu = 0.0;
    double max_resid_sigma = 0.0;
    double alpha_init = 0.0;  // logged initialization
};

RunOutput run_dfsmc(const CMat& y, const DictionaryBlocks& dict, const Hyperparams& hp,
                    const Schedule& sched, const RunOptions& opt = {});

// Individual EM updates on an explicit state, for tests and oracles. The
// engine runs the same math through cached intermediates.
void e_step(const CMat& y, const DictionaryBlocks& dict, PosteriorState& st);
LikelihoodTerms likelihood_terms(const CMat& y, const DictionaryBlocks& dict,
                                 const PosteriorState& st);
double update_noise_precision(const LikelihoodTerms& lt, double alpha_prev, int n, int m,
                              const Hyperparams& hp);
void update_signal_precision(PosteriorState& st, int m, const Hyperparams& hp);
void update_coupling_precision(PosteriorState& st, const Hyperparams& hp);

struct MStepSolveInfo {
    linalg::SolveReport solve;
    double residual = 0.0;  // relative residual of the system actually solved
};
MStepSolveInfo update_coupling_vector(const CMat& y, const DictionaryBlocks& dict,
                                      PosteriorState& st, const RunOptions& opt = {});
MStepSolveInfo update_offgrid(const CMat& y, const DictionaryBlocks& dict, PosteriorState& st,
                              const RunOptions& opt = {});

// Normal-equation systems behind the two M-step solves, for oracle tests.
void coupling_system(const CMat& y, const DictionaryBlocks& dict, const PosteriorState& st,
                     CMat& h, CVec& z);
void offgrid_system(const CMat& y, const DictionaryBlocks& dict, const PosteriorState& st,
                    RMat& g, RVec& z);

}  // namespace dfsmc
