#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "dfsmc/types.hpp"

namespace dfsmc {

// Deterministic random stream: mt19937_64 with explicit output transforms
// (no std::*_distribution, whose draw sequences vary across standard
// libraries). uniform() maps the top 53 bits to [0,1); normals come from
// Box-Muller in fixed pairs.
class RandomStream {
  public:
    explicit RandomStream(uint64_t seed) : eng_(seed) {}

    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal, one value (second of each Box-Muller pair is cached)
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double z0, z1;
        normal_pair(z0, z1);
        spare_ = z1;
        have_spare_ = true;
        return z0;
    }

    // mean + CN(0, var): re/im each N(0, var/2), always consuming one pair
    cx cnormal(cx mean, double var) {
        double z0, z1;
        normal_pair(z0, z1);
        const double s = std::sqrt(0.5 * var);
        return mean + cx(s * z0, s * z1);
    }

  private:
    void normal_pair(double& z0, double& z1) {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        z0 = r * std::cos(2.0 * M_PI * u2);
        z1 = r * std::sin(2.0 * M_PI * u2);
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace dfsmc
