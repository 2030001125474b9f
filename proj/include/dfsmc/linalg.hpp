#pragma once

#include "dfsmc/types.hpp"

namespace dfsmc::linalg {

CMat ctranspose(const CMat& a);  // conjugate transpose
void matvec(const CMat& a, const cx* x, cx* y);  // y = A x (column sweep)
double fro_norm(const CMat& a);
double hermitian_defect(const CMat& a);  // max |a_ij - conj(a_ji)|

// Upper Cholesky R = U^H U of a Hermitian positive definite matrix (upper
// triangle of r is read). Returns false on breakdown. cond_est is the crude
// (max diag / min diag)^2 estimate from the factor.
bool cholesky_upper(const CMat& r, CMat& u, double& cond_est);

// x = R^{-1} b given the factor U (back/forward substitution, b overwritten ok).
void cholesky_solve(const CMat& u, const cx* b, cx* x);

// Full inverse from the factor: inv = U^{-1} U^{-H}, Hermitian by construction.
void cholesky_inverse(const CMat& u, CMat& inv);

// Real SPD analogues.
bool cholesky_upper_real(const RMat& r, RMat& u, double& cond_est);
void cholesky_solve_real(const RMat& u, const double* b, double* x);

// Solve A x = b for Hermitian (resp. symmetric) positive definite A with the
// shared conditioning policy: if the factorization breaks down or the
// condition estimate exceeds cond_limit, add ridge_rel * tr(A)/n to the
// diagonal and retry once. `ridged` records that the fallback fired.
struct SolveReport {
    bool ridged = false;
    double ridge = 0.0;  // diagonal shift actually applied (0 when not ridged)
    double cond_est = 0.0;
};
SolveReport solve_hpd(CMat a, const CVec& b, CVec& x, double cond_limit = 1e14,
                      double ridge_rel = 1e-10);
SolveReport solve_spd(RMat a, const RVec& b, RVec& x, double cond_limit = 1e14,
                      double ridge_rel = 1e-10);

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
// Eigenvalues ascending; vectors(:,i) is the unit eigenvector for values[i].
struct EigH {
    RVec values;
    CMat vectors;
};
EigH eig_hermitian(CMat a);

}  // namespace dfsmc::linalg
