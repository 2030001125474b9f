#include "dfsmc/dfsmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dfsmc/kernels.hpp"

namespace dfsmc {

using kernels::active;

void Hyperparams::validate() const {
    require(a > 0 && b > 0 && c > 0 && d > 0 && e > 0 && f > 0,
            "hyperparams: all six values must be positive");
}

void Schedule::validate() const {
    require(n1 >= 1 && n2 >= 1 && n3 >= 1, "schedule: n1, n2, n3 must be positive");
}

namespace {

// out(:,u) = block_u(stack) * c, the coupled dictionary column at grid point u
void coupled_columns(const DictionaryBlocks& dict, const CVec& c, const CMat& stack, CMat& out) {
    const int n = dict.n();
    out.resize(n, dict.u());
    for (int u = 0; u < dict.u(); ++u) {
        cx* col = out.col(u);
        const cx* blk = stack.col(u);
        for (int k = 0; k < n; ++k)
            if (c[k] != cx(0.0, 0.0))
                active().caxpy(n, c[k], blk + static_cast<size_t>(k) * n, col);
    }
}

// Sigma_X = [alpha T^H T + diag(iota)]^{-1}, mu = alpha Sigma_X T^H Y,
// both from the cached Gram and correlation matrices.
void posterior_from(const CMat& gram, const CMat& thy, double alpha, const RVec& iota,
                    CMat& sigma, CMat& mu) {
    const int u = gram.rows, m = thy.cols;
    CMat r(u, u);
    for (int j = 0; j < u; ++j) {
        const cx* gj = gram.col(j);
        cx* rj = r.col(j);
        for (int i = 0; i < u; ++i) rj[i] = alpha * gj[i];
        rj[j] += iota[j];
    }
    CMat uf;
    double cond = 0.0;
    if (!linalg::cholesky_upper(r, uf, cond))
        throw std::runtime_error("e_step: posterior system not positive definite");
    linalg::cholesky_inverse(uf, sigma);
    mu.resize(u, m);
    active().gemm_ct(u, m, u, cx(alpha, 0.0), sigma.data.data(), u, thy.data.data(), u,
                     cx(0.0, 0.0), mu.data.data(), u);
}

// Relative residuals of the posterior solves, for certification.
void posterior_residuals(const CMat& gram, const CMat& thy, double alpha, const RVec& iota,
                         const CMat& sigma, const CMat& mu, double& r_mu, double& r_sigma) {
    const int u = gram.rows, m = thy.cols;
    CMat r(u, u);
    for (int j = 0; j < u; ++j) {
        const cx* gj = gram.col(j);
        cx* rj = r.col(j);
        for (int i = 0; i < u; ++i) rj[i] = alpha * gj[i];
        rj[j] += iota[j];
    }
    CMat rm(u, m);
    active().gemm_ct(u, m, u, cx(1.0, 0.0), r.data.data(), u, mu.data.data(), u, cx(0.0, 0.0),
                     rm.data.data(), u);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < rm.data.size(); ++i) {
        num += std::norm(rm.data[i] - alpha * thy.data[i]);
        den += std::norm(alpha * thy.data[i]);
    }
    r_mu = den > 0.0 ? std::sqrt(num / den) : 0.0;

    CMat rs(u, u);
    active().gemm_ct(u, u, u, cx(1.0, 0.0), r.data.data(), u, sigma.data.data(), u, cx(0.0, 0.0),
                     rs.data.data(), u);
    for (int i = 0; i < u; ++i) rs(i, i) -= 1.0;
    r_sigma = linalg::fro_norm(rs) / std::sqrt(static_cast<double>(u));
}

// B = [vec(Psi_0(nu)) ... vec(Psi_{U-1}(nu))]
CMat build_bstack(const DictionaryBlocks& dict, const RVec& nu) {
    CMat b = dict.d_stack;
    const int nn = dict.n() * dict.n();
    for (int u = 0; u < dict.u(); ++u)
        if (nu[u] != 0.0) active().caxpy(nn, cx(nu[u], 0.0), dict.xi_stack.col(u), b.col(u));
    return b;
}

// S2 = mu mu^H + M Sigma_X (the second posterior moment summed over snapshots)
CMat build_s2(const CMat& muh, const CMat& sigma, int m) {
    const int u = sigma.rows;
    CMat s2(u, u);
    active().gemm_ct(u, u, muh.rows, cx(1.0, 0.0), muh.data.data(), muh.rows, muh.data.data(),
                     muh.rows, cx(0.0, 0.0), s2.data.data(), u);
    for (size_t i = 0; i < s2.data.size(); ++i) s2.data[i] += static_cast<double>(m) * sigma.data[i];
    return s2;
}

// H = alpha sum_p Psi_p^H [sum_k Psi_k S2(k,p)] + diag(vartheta)
// z = alpha sum_u Psi_u^H (Y mu^H)(:,u)        with gh = mu Y^H
void coupling_sys_from(const DictionaryBlocks& dict, const CMat& bstack, const CMat& s2,
                       const CMat& gh, double alpha, const RVec& vartheta, CMat& h, CVec& z) {
    const int n = dict.n(), u = dict.u();
    const int nn = n * n;
    const CMat bc = linalg::ctranspose(bstack);  // U x N^2
    CMat mw(nn, u);
    active().gemm_ct(nn, u, u, cx(1.0, 0.0), bc.data.data(), u, s2.data.data(), u, cx(0.0, 0.0),
                     mw.data.data(), nn);
    h.resize(n, n);
    for (int p = 0; p < u; ++p)
        active().gemm_ct(n, n, n, cx(alpha, 0.0), bstack.col(p), n, mw.col(p), n, cx(1.0, 0.0),
                         h.data.data(), n);
    for (int i = 0; i < n; ++i) h(i, i) += vartheta[i];

    z.assign(n, cx(0.0, 0.0));
    CVec g(n);
    for (int q = 0; q < u; ++q) {
        for (int i = 0; i < n; ++i) g[i] = std::conj(gh(q, i));
        active().gemm_ct(n, 1, n, cx(alpha, 0.0), bstack.col(q), n, g.data(), n, cx(1.0, 0.0),
                         z.data(), n);
    }
}

// G(i,k) = Re{(W^H W)(i,k) S2(k,i)}
// z_i = sum_m Re{conj(mu_im) [W^H(y_m - T0 mu_m)]_im} - M Re{[W^H T0 Sigma]_ii}
void offgrid_sys_from(const CMat& t0hw, const CMat& wgw, const CMat& why, const CMat& s2,
                      const CMat& mu, const CMat& sigma, RMat& g, RVec& z) {
    const int u = wgw.rows, m = mu.cols;
    CMat e1(u, m);
    active().gemm_ct(u, m, u, cx(-1.0, 0.0), t0hw.data.data(), u, mu.data.data(), u,
                     cx(0.0, 0.0), e1.data.data(), u);
    for (size_t i = 0; i < e1.data.size(); ++i) e1.data[i] += why.data[i];

    z.assign(u, 0.0);
    for (int jm = 0; jm < m; ++jm) {
        const cx* ec = e1.col(jm);
        const cx* mc = mu.col(jm);
        for (int i = 0; i < u; ++i)
            z[i] += ec[i].real() * mc[i].real() + ec[i].imag() * mc[i].imag();
    }
    for (int i = 0; i < u; ++i) {
        const cx s = active().cdotc(u, t0hw.col(i), sigma.col(i));
        z[i] -= static_cast<double>(m) * s.real();
    }

    g = RMat(u, u);
    for (int k = 0; k < u; ++k) {
        double* gc = g.col(k);
        const cx* wc = wgw.col(k);
        for (int i = 0; i < u; ++i) {
            const cx sv = s2(k, i);
            gc[i] = wc[i].real() * sv.real() - wc[i].imag() * sv.imag();
        }
    }
}

double vec_norm(const CVec& v) {
    return std::sqrt(active().cnorm2(static_cast<int>(v.size()), v.data()));
}

double vec_norm(const RVec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

MStepSolveInfo solve_hpd_certified(const CMat& h, const CVec& z, CVec& x, const RunOptions& opt) {
    MStepSolveInfo info;
    info.solve = linalg::solve_hpd(h, z, x, opt.cond_limit, opt.ridge_rel);
    CVec hx(h.rows);
    linalg::matvec(h, x.data(), hx.data());
    for (int i = 0; i < h.rows; ++i) hx[i] += info.solve.ridge * x[i] - z[i];
    const double den = vec_norm(z);
    info.residual = den > 0.0 ? vec_norm(hx) / den : 0.0;
    return info;
}

MStepSolveInfo solve_spd_certified(const RMat& g, const RVec& z, RVec& x, const RunOptions& opt) {
    MStepSolveInfo info;
    info.solve = linalg::solve_spd(g, z, x, opt.cond_limit, opt.ridge_rel);
    RVec gx(g.rows, 0.0);
    for (int k = 0; k < g.cols; ++k) {
        const double* gc = g.col(k);
        for (int i = 0; i < g.rows; ++i) gx[i] += gc[i] * x[k];
    }
    for (int i = 0; i < g.rows; ++i) gx[i] += info.solve.ridge * x[i] - z[i];
    const double den = vec_norm(z);
    info.residual = den > 0.0 ? vec_norm(gx) / den : 0.0;
    return info;
}

void validate_state(const DictionaryBlocks& dict, const PosteriorState& st) {
    require(st.alpha_n > 0.0, "state: alpha_n must be positive");
    require(static_cast<int>(st.iota.size()) == dict.u(), "state: iota length != U");
    require(static_cast<int>(st.c.size()) == dict.n(), "state: coupling length != N");
    require(static_cast<int>(st.nu.size()) == dict.u(), "state: offset length != U");
    for (double v : st.iota) require(v > 0.0, "state: iota entries must be positive");
}

}  // namespace

void e_step(const CMat& y, const DictionaryBlocks& dict, PosteriorState& st) {
    require(y.rows == dict.n(), "e_step: snapshot rows != N");
    validate_state(dict, st);
    const CMat t = t_matrix(dict, st.nu, st.c);
    const int u = dict.u();
    CMat gram(u, u), thy(u, y.cols);
    active().gemm_ct(u, u, dict.n(), cx(1.0, 0.0), t.data.data(), dict.n(), t.data.data(),
                     dict.n(), cx(0.0, 0.0), gram.data.data(), u);
    active().gemm_ct(u, y.cols, dict.n(), cx(1.0, 0.0), t.data.data(), dict.n(), y.data.data(),
                     dict.n(), cx(0.0, 0.0), thy.data.data(), u);
    posterior_from(gram, thy, st.alpha_n, st.iota, st.sigma_x, st.mu);
}

LikelihoodTerms likelihood_terms(const CMat& y, const DictionaryBlocks& dict,
                                 const PosteriorState& st) {
    require(y.rows == dict.n(), "likelihood_terms: snapshot rows != N");
    const CMat t = t_matrix(dict, st.nu, st.c);
    const int u = dict.u(), m = y.cols;
    CMat gram(u, u);
    active().gemm_ct(u, u, dict.n(), cx(1.0, 0.0), t.data.data(), dict.n(), t.data.data(),
                     dict.n(), cx(0.0, 0.0), gram.data.data(), u);
    LikelihoodTerms lt;
    lt.g1 = active().cdotc(u * u, st.sigma_x.data.data(), gram.data.data()).real();
    lt.g2.resize(m);
    CVec resid(dict.n());
    for (int jm = 0; jm < m; ++jm) {
        linalg::matvec(t, st.mu.col(jm), resid.data());
        for (int i = 0; i < dict.n(); ++i) resid[i] = y(i, jm) - resid[i];
        lt.g2[jm] = active().cnorm2(dict.n(), resid.data());
    }
    lt.g3 = 0.0;
    for (int i = 0; i < dict.n(); ++i) lt.g3 += st.vartheta[i] * std::norm(st.c[i]);
    return lt;
}

double update_noise_precision(const LikelihoodTerms& lt, double alpha_prev, int n, int m,
                              const Hyperparams& hp) {
    double sg2 = 0.0;
    for (double v : lt.g2) sg2 += v;
    const double iter = (m * n - 1.0 - alpha_prev * sg2) / (m * lt.g1 + hp.b);
    if (iter > 0.0 && std::isfinite(iter)) return iter;
    return (m * n + hp.a - 1.0) / (m * lt.g1 + sg2 + hp.b);
}

void update_signal_precision(PosteriorState& st, int m, const Hyperparams& hp) {
    const int u = st.mu.rows;
    RVec rowsq(u, 0.0);
    for (int jm = 0; jm < m; ++jm) {
        const cx* col = st.mu.col(jm);
        for (int i = 0; i < u; ++i) rowsq[i] += std::norm(col[i]);
    }
    for (int i = 0; i < u; ++i) {
        const double den = hp.d + m * st.sigma_x(i, i).real();
        const double iter = (m - 1.0 - st.iota[i] * rowsq[i]) / den;
        st.iota[i] = (iter > 0.0 && std::isfinite(iter))
                         ? iter
                         : (m + hp.c - 1.0) / (den + rowsq[i]);
    }
}

void update_coupling_precision(PosteriorState& st, const Hyperparams& hp) {
    st.vartheta.resize(st.c.size());
    for (size_t i = 0; i < st.c.size(); ++i) st.vartheta[i] = 1.0 / (hp.f + std::norm(st.c[i]));
}

void coupling_system(const CMat& y, const DictionaryBlocks& dict, const PosteriorState& st,
                     CMat& h, CVec& z) {
    require(y.rows == dict.n(), "coupling_system: snapshot rows != N");
    const CMat bstack = build_bstack(dict, st.nu);
    const CMat muh = linalg::ctranspose(st.mu);
    const CMat yh = linalg::ctranspose(y);
    const CMat s2 = build_s2(muh, st.sigma_x, y.cols);
    CMat gh(dict.u(), dict.n());
    active().gemm_ct(dict.u(), dict.n(), y.cols, cx(1.0, 0.0), muh.data.data(), y.cols,
                     yh.data.data(), y.cols, cx(0.0, 0.0), gh.data.data(), dict.u());
    coupling_sys_from(dict, bstack, s2, gh, st.alpha_n, st.vartheta, h, z);
}

void offgrid_system(const CMat& y, const DictionaryBlocks& dict, const PosteriorState& st,
                    RMat& g, RVec& z) {
    require(y.rows == dict.n(), "offgrid_system: snapshot rows != N");
    const int n = dict.n(), u = dict.u();
    CMat t0, w;
    coupled_columns(dict, st.c, dict.d_stack, t0);
    coupled_columns(dict, st.c, dict.xi_stack, w);
    CMat why(u, y.cols), t0hw(u, u), wgw(u, u);
    active().gemm_ct(u, y.cols, n, cx(1.0, 0.0), w.data.data(), n, y.data.data(), n,
                     cx(0.0, 0.0), why.data.data(), u);
    active().gemm_ct(u, u, n, cx(1.0, 0.0), t0.data.data(), n, w.data.data(), n, cx(0.0, 0.0),
                     t0hw.data.data(), u);
    active().gemm_ct(u, u, n, cx(1.0, 0.0), w.data.data(), n, w.data.data(), n, cx(0.0, 0.0),
                     wgw.data.data(), u);
    const CMat muh = linalg::ctranspose(st.mu);
    const CMat s2 = build_s2(muh, st.sigma_x, y.cols);
    offgrid_sys_from(t0hw, wgw, why, s2, st.mu, st.sigma_x, g, z);
}

MStepSolveInfo update_coupling_vector(const CMat& y, const DictionaryBlocks& dict,
                                      PosteriorState& st, const RunOptions& opt) {
    CMat h;
    CVec z;
    coupling_system(y, dict, st, h, z);
    CVec c;
    const MStepSolveInfo info = solve_hpd_certified(h, z, c, opt);
    st.c = c;
    return info;
}

MStepSolveInfo update_offgrid(const CMat& y, const DictionaryBlocks& dict, PosteriorState& st,
                              const RunOptions& opt) {
    RMat g;
    RVec z;
    offgrid_system(y, dict, st, g, z);
    MStepSolveInfo info;
    RVec nu(dict.u(), 0.0);
    if (vec_norm(z) > 0.0) info = solve_spd_certified(g, z, nu, opt);
    clamp_offsets(nu, dict.grid.step);
    st.nu = nu;
    return info;
}

// ---------------------------------------------------------------------------
// Engine: same math as the standalone ops, with the expensive intermediates
// cached across iterations and refreshed only when c or nu actually change.

namespace {

struct Engine {
    const CMat& y;
    const DictionaryBlocks& dict;
    const Hyperparams& hp;
    const Schedule& sched;
    const RunOptions& opt;
    const int n, m, u;

    RunOutput out;
    PosteriorState& st;

    CMat yh;                      // M x N
    CMat t0, w;                   // N x U, rebuilt when c changes
    CMat tmat, th;                // N x U and its conjugate transpose
    CMat gram, thy;               // U x U, U x M
    CMat why, t0hw, wgw;          // c-dependent pieces of the offset system
    CMat bstack;                  // nu-dependent Psi blocks
    CMat muh, s2, gh;             // per-iteration posterior moments
    bool c_dirty = true, nu_dirty = true;
    bool cw_valid = false, b_valid = false, moments_valid = false, gh_valid = false;

    Engine(const CMat& y_, const DictionaryBlocks& dict_, const Hyperparams& hp_,
           const Schedule& sched_, const RunOptions& opt_)
        : y(y_), dict(dict_), hp(hp_), sched(sched_), opt(opt_),
          n(dict_.n()), m(y_.cols), u(dict_.u()), st(out.state) {}

    void init() {
        const double yfro2 = active().cnorm2(static_cast<int>(y.data.size()), y.data.data());
        require(yfro2 > 0.0, "run_dfsmc: snapshot matrix is identically zero");
        st.alpha_n = (static_cast<double>(n) * m) / (0.01 * yfro2);
        out.alpha_init = st.alpha_n;
        st.iota.assign(u, 1.0);
        st.vartheta.assign(n, 0.0);
        st.vartheta[0] = 1.0;
        st.c.assign(n, cx(0.0, 0.0));
        st.c[0] = cx(1.0, 0.0);
        st.nu.assign(u, 0.0);
        yh = linalg::ctranspose(y);
    }

    void refresh() {
        if (c_dirty) {
            coupled_columns(dict, st.c, dict.d_stack, t0);
            coupled_columns(dict, st.c, dict.xi_stack, w);
            cw_valid = false;
        }
        if (c_dirty || nu_dirty) {
            tmat = t0;
            for (int k = 0; k < u; ++k)
                if (st.nu[k] != 0.0) active().caxpy(n, cx(st.nu[k], 0.0), w.col(k), tmat.col(k));
            th = linalg::ctranspose(tmat);
            gram.resize(u, u);
            active().gemm_ct(u, u, n, cx(1.0, 0.0), tmat.data.data(), n, tmat.data.data(), n,
                             cx(0.0, 0.0), gram.data.data(), u);
            thy.resize(u, m);
            active().gemm_ct(u, m, n, cx(1.0, 0.0), tmat.data.data(), n, y.data.data(), n,
                             cx(0.0, 0.0), thy.data.data(), u);
        }
        if (nu_dirty) b_valid = false;
        c_dirty = nu_dirty = false;
    }

    void do_e_step() {
        posterior_from(gram, thy, st.alpha_n, st.iota, st.sigma_x, st.mu);
        moments_valid = gh_valid = false;
        if (opt.certify) {
            double rm = 0.0, rs = 0.0;
            posterior_residuals(gram, thy, st.alpha_n, st.iota, st.sigma_x, st.mu, rm, rs);
            out.max_resid_mu = std::max(out.max_resid_mu, rm);
            out.max_resid_sigma = std::max(out.max_resid_sigma, rs);
        }
    }

    LikelihoodTerms terms() {
        LikelihoodTerms lt;
        lt.g1 = active().cdotc(u * u, st.sigma_x.data.data(), gram.data.data()).real();
        // (T mu)^H = mu^H T^H, column-swept against Y^H for the g2 norms
        CMat tmuh(m, n);
        active().gemm_ct(m, n, u, cx(1.0, 0.0), st.mu.data.data(), u, th.data.data(), u,
                         cx(0.0, 0.0), tmuh.data.data(), m);
        lt.g2.assign(m, 0.0);
        for (int j = 0; j < n; ++j) {
            const cx* yc = yh.col(j);
            const cx* tc = tmuh.col(j);
            for (int i = 0; i < m; ++i) lt.g2[i] += std::norm(yc[i] - tc[i]);
        }
        lt.g3 = 0.0;
        for (int i = 0; i < n; ++i) lt.g3 += st.vartheta[i] * std::norm(st.c[i]);
        return lt;
    }

    void ensure_moments() {
        if (moments_valid) return;
        muh = linalg::ctranspose(st.mu);
        s2 = build_s2(muh, st.sigma_x, m);
        moments_valid = true;
    }

    bool do_coupling() {
        if (opt.mode != EngineMode::full) return false;
        update_coupling_precision(st, hp);
        if (!b_valid) {
            bstack = build_bstack(dict, st.nu);
            b_valid = true;
        }
        ensure_moments();
        if (!gh_valid) {
            gh.resize(u, n);
            active().gemm_ct(u, n, m, cx(1.0, 0.0), muh.data.data(), m, yh.data.data(), m,
                             cx(0.0, 0.0), gh.data.data(), u);
            gh_valid = true;
        }
        CMat h;
        CVec z;
        coupling_sys_from(dict, bstack, s2, gh, st.alpha_n, st.vartheta, h, z);
        CVec c;
        const MStepSolveInfo info = solve_hpd_certified(h, z, c, opt);
        st.c = c;
        c_dirty = true;
        out.ridge_events += info.solve.ridged ? 1 : 0;
        out.max_resid_c = std::max(out.max_resid_c, info.residual);
        return true;
    }

    bool do_offgrid() {
        if (opt.mode == EngineMode::on_grid) return false;
        if (!cw_valid) {
            why.resize(u, m);
            t0hw.resize(u, u);
            wgw.resize(u, u);
            active().gemm_ct(u, m, n, cx(1.0, 0.0), w.data.data(), n, y.data.data(), n,
                             cx(0.0, 0.0), why.data.data(), u);
            active().gemm_ct(u, u, n, cx(1.0, 0.0), t0.data.data(), n, w.data.data(), n,
                             cx(0.0, 0.0), t0hw.data.data(), u);
            active().gemm_ct(u, u, n, cx(1.0, 0.0), w.data.data(), n, w.data.data(), n,
                             cx(0.0, 0.0), wgw.data.data(), u);
            cw_valid = true;
        }
        ensure_moments();
        RMat g;
        RVec z;
        offgrid_sys_from(t0hw, wgw, why, s2, st.mu, st.sigma_x, g, z);
        RVec nu(u, 0.0);
        if (vec_norm(z) > 0.0) {
            const MStepSolveInfo info = solve_spd_certified(g, z, nu, opt);
            out.ridge_events += info.solve.ridged ? 1 : 0;
            out.max_resid_nu = std::max(out.max_resid_nu, info.residual);
        }
        clamp_offsets(nu, dict.grid.step);
        st.nu = nu;
        nu_dirty = true;
        return true;
    }

    RunOutput run() {
        init();
        int s_method = 0, i_method = 1;
        RVec spec_prev(u, 0.0);
        out.trace.reserve(sched.n1);
        for (int i_iter = 1; i_iter <= sched.n1; ++i_iter) {
            refresh();
            do_e_step();
            const LikelihoodTerms lt = terms();
            st.alpha_n = update_noise_precision(lt, st.alpha_n, n, m, hp);
            update_signal_precision(st, m, hp);

            double spec_change = 0.0;
            for (int i = 0; i < u; ++i) {
                const double p = 1.0 / st.iota[i];
                spec_change = std::max(spec_change, std::abs(p - spec_prev[i]));
                spec_prev[i] = p;
            }

            // Algorithm flag logic: counters advance in every mode, updates
            // are suppressed by mode inside do_offgrid / do_coupling.
            bool ran_nu = false, ran_c = false;
            if (i_iter >= sched.n2 && s_method == 1) {
                if (++i_method == sched.n3) {
                    i_method = 1;
                    s_method = 0;
                }
                ran_nu = do_offgrid();
            }
            if (i_iter >= sched.n2 && s_method == 0) {
                if (++i_method == sched.n3) {
                    i_method = 1;
                    s_method = 1;
                }
                ran_c = do_coupling();
            }
            const char phase = ran_nu && ran_c ? 'b' : ran_nu ? 'o' : ran_c ? 'c' : 'w';
            out.trace.push_back({i_iter, phase, st.alpha_n, spec_change});
        }
        out.spectrum.power.resize(u);
        for (int i = 0; i < u; ++i) out.spectrum.power[i] = 1.0 / st.iota[i];
        out.spectrum.offsets = st.nu;
        return std::move(out);
    }
};

}  // namespace

RunOutput run_dfsmc(const CMat& y, const DictionaryBlocks& dict, const Hyperparams& hp,
                    const Schedule& sched, const RunOptions& opt) {
    require(y.rows == dict.n(), "run_dfsmc: snapshot rows != N");
    require(y.cols >= 1, "run_dfsmc: need at least one snapshot");
    hp.validate();
    sched.validate();
    Engine eng(y, dict, hp, sched, opt);
    return eng.run();
}

}  // namespace dfsmc
