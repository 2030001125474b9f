#pragma once

#include "dfsmc/rng.hpp"
#include "dfsmc/types.hpp"

namespace dfsmc {

// Uniform linear array, spacing in wavelengths (d / lambda).
struct ArrayGeometry {
    int num_antennas = 20;
    double spacing = 0.5;
};

// Narrowband sources: directions in radians, strictly increasing. The common
// per-source symbol distribution is CN(signal_mean, signal_variance), so the
// per-source power is |signal_mean|^2 + signal_variance.
struct SourceSet {
    RVec directions;
    cx signal_mean = cx(0.0, M_SQRT2);  // sqrt(2) e^{j pi/2}
    double signal_variance = 1.0;

    double power() const {
        return std::norm(signal_mean) + signal_variance;
    }
};

struct Scenario {
    ArrayGeometry geometry;
    SourceSet sources;
    int snapshots = 100;
    double snr_db = 20.0;
    double coupling_alpha_db = -8.0;
    int coupling_taps = 5;

    void validate() const;
};

// a_n(theta) = exp(j 2 pi n spacing sin theta), n = 0..N-1
CVec steering_vector(double theta, const ArrayGeometry& geom);

// da_n/dtheta = j 2 pi n spacing cos(theta) a_n(theta)
CVec steering_derivative(double theta, const ArrayGeometry& geom);

// Symmetric Toeplitz coupling matrix C[i][j] = c[|i-j|] (not conjugated).
CMat coupling_matrix(const CVec& c);

// Q(theta) with Q c = C(c) a(theta) for every length-N c:
//   Q[i][n] = (a_{i+n} if i+n <= N-1) + (a_{i-n} if 1 <= n <= i)
CMat q_matrix(double theta, const ArrayGeometry& geom);

// Same index pattern applied to an arbitrary per-antenna vector (used to form
// the derivative blocks of the dictionary).
CMat q_pattern(const CVec& a);

// Coupling vector: c_0 = 1, c_n = (1 + xi_n) e^{j phi_n} 10^{alpha(1+0.5n)/20}
// for 1 <= n < taps, zero beyond; xi ~ U[-0.05, 0.05], phi ~ U[0, 2 pi).
CVec generate_coupling(double alpha_db, int taps, int num_antennas, RandomStream& rng);

// Y = C(c) A S + E with S(k,m) ~ CN(mean, var), E ~ CN(0, sigma2 I),
// sigma2 = power * 10^(-snr/10). Draw order is column-major in S then E.
struct Snapshots {
    CMat y;
    double noise_var = 0.0;
};
Snapshots simulate_snapshots(const Scenario& sc, const CVec& c, RandomStream& rng);

}  // namespace dfsmc
