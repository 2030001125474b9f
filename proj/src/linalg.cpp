#include "dfsmc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dfsmc/kernels.hpp"

namespace dfsmc::linalg {

using kernels::active;

CMat ctranspose(const CMat& a) {
    CMat out(a.cols, a.rows);
    for (int j = 0; j < a.cols; ++j)
        for (int i = 0; i < a.rows; ++i) out(j, i) = std::conj(a(i, j));
    return out;
}

void matvec(const CMat& a, const cx* x, cx* y) {
    std::fill(y, y + a.rows, cx(0.0, 0.0));
    for (int k = 0; k < a.cols; ++k) active().caxpy(a.rows, x[k], a.col(k), y);
}

double fro_norm(const CMat& a) {
    return std::sqrt(active().cnorm2(static_cast<int>(a.data.size()), a.data.data()));
}

double hermitian_defect(const CMat& a) {
    double worst = 0.0;
    for (int j = 0; j < a.cols; ++j)
        for (int i = 0; i < a.rows; ++i)
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    return worst;
}

// Crout column Cholesky on the upper factor: every inner product runs down a
// contiguous column prefix.
bool cholesky_upper(const CMat& r, CMat& u, double& cond_est) {
    const int n = r.rows;
    u.resize(n, n);
    double dmax = 0.0, dmin = 0.0;
    for (int j = 0; j < n; ++j) {
        const cx* rj = r.col(j);
        cx* uj = u.col(j);
        for (int i = 0; i < j; ++i) {
            const cx s = active().cdotc(i, u.col(i), uj);
            uj[i] = (rj[i] - s) / u(i, i).real();
        }
        const double rad = rj[j].real() - active().cnorm2(j, uj);
        if (!(rad > 0.0) || !std::isfinite(rad)) return false;
        const double d = std::sqrt(rad);
        uj[j] = cx(d, 0.0);
        dmax = j == 0 ? d : std::max(dmax, d);
        dmin = j == 0 ? d : std::min(dmin, d);
    }
    cond_est = (dmax / dmin) * (dmax / dmin);
    return true;
}

void cholesky_solve(const CMat& u, const cx* b, cx* x) {
    const int n = u.rows;
    // U^H w = b (forward), then U x = w (saxpy-form back substitution)
    for (int i = 0; i < n; ++i) {
        const cx s = active().cdotc(i, u.col(i), x);
        x[i] = (b[i] - s) / u(i, i).real();
    }
    for (int k = n - 1; k >= 0; --k) {
        x[k] /= u(k, k).real();
        active().caxpy(k, -x[k], u.col(k), x);
    }
}

void cholesky_inverse(const CMat& u, CMat& inv) {
    const int n = u.rows;
    // V = U^{-1} (upper), one saxpy-form solve per unit column
    CMat v(n, n);
    std::vector<cx> x(n);
    for (int j = 0; j < n; ++j) {
        std::fill(x.begin(), x.begin() + j + 1, cx(0.0, 0.0));
        x[j] = cx(1.0, 0.0);
        for (int k = j; k >= 0; --k) {
            x[k] /= u(k, k).real();
            active().caxpy(k, -x[k], u.col(k), x.data());
        }
        std::copy(x.begin(), x.begin() + j + 1, v.col(j));
    }
    // inv = V V^H through suffix dots on V^H, mirrored to keep it Hermitian
    CMat vh = ctranspose(v);
    inv.resize(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            const cx s = active().cdotc(n - j, vh.col(i) + j, vh.col(j) + j);
            inv(i, j) = i == j ? cx(s.real(), 0.0) : s;
            if (i != j) inv(j, i) = std::conj(s);
        }
    }
}

bool cholesky_upper_real(const RMat& r, RMat& u, double& cond_est) {
    const int n = r.rows;
    u = RMat(n, n);
    double dmax = 0.0, dmin = 0.0;
    for (int j = 0; j < n; ++j) {
        const double* rj = r.col(j);
        double* uj = u.col(j);
        for (int i = 0; i < j; ++i) {
            double s = 0.0;
            const double* ui = u.col(i);
            for (int k = 0; k < i; ++k) s += ui[k] * uj[k];
            uj[i] = (rj[i] - s) / u(i, i);
        }
        double rad = rj[j];
        for (int k = 0; k < j; ++k) rad -= uj[k] * uj[k];
        if (!(rad > 0.0) || !std::isfinite(rad)) return false;
        const double d = std::sqrt(rad);
        uj[j] = d;
        dmax = j == 0 ? d : std::max(dmax, d);
        dmin = j == 0 ? d : std::min(dmin, d);
    }
    cond_est = (dmax / dmin) * (dmax / dmin);
    return true;
}

void cholesky_solve_real(const RMat& u, const double* b, double* x) {
    const int n = u.rows;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        const double* ui = u.col(i);
        for (int k = 0; k < i; ++k) s += ui[k] * x[k];
        x[i] = (b[i] - s) / u(i, i);
    }
    for (int k = n - 1; k >= 0; --k) {
        x[k] /= u(k, k);
        const double* uk = u.col(k);
        for (int i = 0; i < k; ++i) x[i] -= x[k] * uk[i];
    }
}

namespace {

template <typename Mat>
double diag_trace(const Mat& a) {
    double t = 0.0;
    for (int i = 0; i < a.rows; ++i) {
        if constexpr (std::is_same_v<Mat, CMat>)
            t += a(i, i).real();
        else
            t += a(i, i);
    }
    return t;
}

}  // namespace

SolveReport solve_hpd(CMat a, const CVec& b, CVec& x, double cond_limit, double ridge_rel) {
    const int n = a.rows;
    x.assign(n, cx(0.0, 0.0));
    CMat u;
    SolveReport rep;
    bool ok = cholesky_upper(a, u, rep.cond_est);
    if (!ok || rep.cond_est > cond_limit) {
        const double ridge = ridge_rel * diag_trace(a) / n;
        for (int i = 0; i < n; ++i) a(i, i) += ridge;
        rep.ridged = true;
        rep.ridge = ridge;
        ok = cholesky_upper(a, u, rep.cond_est);
        if (!ok) throw std::runtime_error("solve_hpd: matrix not positive definite after ridge");
    }
    cholesky_solve(u, b.data(), x.data());
    return rep;
}

SolveReport solve_spd(RMat a, const RVec& b, RVec& x, double cond_limit, double ridge_rel) {
    const int n = a.rows;
    x.assign(n, 0.0);
    RMat u;
    SolveReport rep;
    bool ok = cholesky_upper_real(a, u, rep.cond_est);
    if (!ok || rep.cond_est > cond_limit) {
        const double ridge = ridge_rel * diag_trace(a) / n;
        for (int i = 0; i < n; ++i) a(i, i) += ridge;
        rep.ridged = true;
        rep.ridge = ridge;
        ok = cholesky_upper_real(a, u, rep.cond_est);
        if (!ok) throw std::runtime_error("solve_spd: matrix not positive definite after ridge");
    }
    cholesky_solve_real(u, b.data(), x.data());
    return rep;
}

// Cyclic complex Jacobi. Each rotation zeroes a(p,q) with the plane unitary
//   U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]],  a(p,q) = r e^{i phi},
// the real rotation angle chosen by the classic tau/t formulas.
EigH eig_hermitian(CMat a) {
    require(a.rows == a.cols, "eig_hermitian: matrix must be square");
    const int n = a.rows;
    // enforce exact Hermitian symmetry before sweeping
    for (int j = 0; j < n; ++j) {
        a(j, j) = cx(a(j, j).real(), 0.0);
        for (int i = 0; i < j; ++i) {
            const cx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    CMat v(n, n);
    for (int i = 0; i < n; ++i) v(i, i) = cx(1.0, 0.0);

    const double fro = fro_norm(a);
    const double stop = 1e-13 * (fro > 0.0 ? fro : 1.0);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off2 = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < j; ++i) off2 += 2.0 * std::norm(a(i, j));
        if (std::sqrt(off2) <= stop) break;
        if (sweep == 59) throw std::runtime_error("eig_hermitian: jacobi did not converge");

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cx apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const cx phase = apq / r;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cx upp(c, 0.0), upq(s, 0.0);
                const cx uqp = -s * std::conj(phase);
                const cx uqq = c * std::conj(phase);

                cx* colp = a.col(p);
                cx* colq = a.col(q);
                for (int i = 0; i < n; ++i) {
                    const cx ap = colp[i], aq = colq[i];
                    colp[i] = ap * upp + aq * uqp;
                    colq[i] = ap * upq + aq * uqq;
                }
                for (int jj = 0; jj < n; ++jj) {
                    const cx ap = a(p, jj), aq = a(q, jj);
                    a(p, jj) = std::conj(upp) * ap + std::conj(uqp) * aq;
                    a(q, jj) = std::conj(upq) * ap + std::conj(uqq) * aq;
                }
                a(p, q) = cx(0.0, 0.0);
                a(q, p) = cx(0.0, 0.0);
                a(p, p) = cx(a(p, p).real(), 0.0);
                a(q, q) = cx(a(q, q).real(), 0.0);

                cx* vp = v.col(p);
                cx* vq = v.col(q);
                for (int i = 0; i < n; ++i) {
                    const cx xp = vp[i], xq = vq[i];
                    vp[i] = xp * upp + xq * uqp;
                    vq[i] = xp * upq + xq * uqq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    EigH out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        std::copy(v.col(order[j]), v.col(order[j]) + n, out.vectors.col(j));
    }
    return out;
}

}  // namespace dfsmc::linalg
