#include "dfsmc/array_model.hpp"

#include <cmath>

#include "dfsmc/linalg.hpp"

namespace dfsmc {

void Scenario::validate() const {
    require(geometry.num_antennas >= 2, "scenario: need at least 2 antennas");
    require(std::isfinite(geometry.spacing) && geometry.spacing > 0.0,
            "scenario: spacing must be positive");
    const int k = static_cast<int>(sources.directions.size());
    require(k >= 1, "scenario: need at least one source");
    require(k < geometry.num_antennas, "scenario: source count must be below antenna count");
    for (int i = 0; i < k; ++i) {
        require(std::isfinite(sources.directions[i]), "scenario: non-finite source direction");
        if (i > 0)
            require(sources.directions[i] > sources.directions[i - 1],
                    "scenario: source directions must be strictly increasing");
    }
    require(sources.signal_variance >= 0.0, "scenario: negative signal variance");
    require(sources.power() > 0.0, "scenario: zero-power sources");
    require(snapshots >= 1, "scenario: need at least one snapshot");
    require(std::isfinite(snr_db), "scenario: non-finite SNR");
    require(std::isfinite(coupling_alpha_db), "scenario: non-finite coupling level");
    require(coupling_taps >= 1 && coupling_taps <= geometry.num_antennas,
            "scenario: coupling taps must be in [1, N]");
}

CVec steering_vector(double theta, const ArrayGeometry& geom) {
    require(std::isfinite(theta), "steering_vector: non-finite angle");
    CVec a(geom.num_antennas);
    const double w = 2.0 * M_PI * geom.spacing * std::sin(theta);
    for (int n = 0; n < geom.num_antennas; ++n) a[n] = std::polar(1.0, w * n);
    return a;
}

CVec steering_derivative(double theta, const ArrayGeometry& geom) {
    CVec a = steering_vector(theta, geom);
    const double g = 2.0 * M_PI * geom.spacing * std::cos(theta);
    for (int n = 0; n < geom.num_antennas; ++n) a[n] *= cx(0.0, g * n);
    return a;
}

CMat coupling_matrix(const CVec& c) {
    const int n = static_cast<int>(c.size());
    require(n >= 1, "coupling_matrix: empty coupling vector");
    CMat out(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out(i, j) = c[std::abs(i - j)];
    return out;
}

CMat q_pattern(const CVec& a) {
    const int n = static_cast<int>(a.size());
    CMat q(n, n);
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) {
            cx v(0.0, 0.0);
            if (i + col <= n - 1) v += a[i + col];
            if (col >= 1 && col <= i) v += a[i - col];
            q(i, col) = v;
        }
    }
    return q;
}

CMat q_matrix(double theta, const ArrayGeometry& geom) {
    return q_pattern(steering_vector(theta, geom));
}

CVec generate_coupling(double alpha_db, int taps, int num_antennas, RandomStream& rng) {
    require(taps >= 1 && taps <= num_antennas, "generate_coupling: taps must be in [1, N]");
    CVec c(num_antennas, cx(0.0, 0.0));
    c[0] = cx(1.0, 0.0);
    for (int n = 1; n < taps; ++n) {
        const double xi = rng.uniform(-0.05, 0.05);
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const double mag = (1.0 + xi) * std::pow(10.0, alpha_db * (1.0 + 0.5 * n) / 20.0);
        c[n] = std::polar(mag, phi);
    }
    return c;
}

Snapshots simulate_snapshots(const Scenario& sc, const CVec& c, RandomStream& rng) {
    sc.validate();
    const int n = sc.geometry.num_antennas;
    const int m = sc.snapshots;
    const int k = static_cast<int>(sc.sources.directions.size());
    require(static_cast<int>(c.size()) == n, "simulate_snapshots: coupling length != N");

    // coupled steering matrix C A, one column per source
    const CMat cmat = coupling_matrix(c);
    CMat ca(n, k);
    for (int j = 0; j < k; ++j) {
        const CVec a = steering_vector(sc.sources.directions[j], sc.geometry);
        linalg::matvec(cmat, a.data(), ca.col(j));
    }

    CMat s(k, m);
    for (int jm = 0; jm < m; ++jm)
        for (int jk = 0; jk < k; ++jk)
            s(jk, jm) = rng.cnormal(sc.sources.signal_mean, sc.sources.signal_variance);

    Snapshots out;
    out.noise_var = sc.sources.power() * std::pow(10.0, -sc.snr_db / 10.0);
    out.y.resize(n, m);
    for (int jm = 0; jm < m; ++jm) {
        linalg::matvec(ca, s.col(jm), out.y.col(jm));
        for (int i = 0; i < n; ++i) out.y(i, jm) += rng.cnormal(cx(0.0, 0.0), out.noise_var);
    }
    return out;
}

}  // namespace dfsmc
