#include "dfsmc/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace dfsmc {

std::vector<int> pick_peak_indices(const RVec& power, int k) {
    const int u = static_cast<int>(power.size());
    require(k >= 1 && k <= u, "pick_peak_indices: need 1 <= k <= grid size");
    std::vector<int> maxima;
    for (int i = 0; i < u; ++i) {
        const bool left_ok = (i == 0) || power[i] > power[i - 1];
        const bool right_ok = (i == u - 1) || power[i] > power[i + 1];
        if (u == 1 || (left_ok && right_ok)) maxima.push_back(i);
    }
    // descending power, ties toward the lower index (stable over ascending indices)
    std::stable_sort(maxima.begin(), maxima.end(),
                     [&](int a, int b) { return power[a] > power[b]; });
    std::vector<int> picked;
    for (int idx : maxima) {
        if (static_cast<int>(picked.size()) == k) break;
        picked.push_back(idx);
    }
    if (static_cast<int>(picked.size()) < k) {
        std::vector<char> taken(u, 0);
        for (int idx : picked) taken[idx] = 1;
        std::vector<int> rest;
        for (int i = 0; i < u; ++i)
            if (!taken[i]) rest.push_back(i);
        std::stable_sort(rest.begin(), rest.end(),
                         [&](int a, int b) { return power[a] > power[b]; });
        for (int idx : rest) {
            if (static_cast<int>(picked.size()) == k) break;
            picked.push_back(idx);
        }
    }
    return picked;
}

RVec pick_peaks(const RVec& power, const RVec& offsets, const Grid& grid, int k) {
    require(static_cast<int>(power.size()) == grid.size(),
            "pick_peaks: power length != grid size");
    require(offsets.empty() || offsets.size() == power.size(),
            "pick_peaks: offsets length != grid size");
    const std::vector<int> idx = pick_peak_indices(power, k);
    RVec dirs;
    dirs.reserve(idx.size());
    for (int i : idx) dirs.push_back(grid.points[i] + (offsets.empty() ? 0.0 : offsets[i]));
    std::sort(dirs.begin(), dirs.end());
    return dirs;
}

double error_e1(RVec estimated_deg, RVec truth_deg) {
    require(estimated_deg.size() == truth_deg.size() && !truth_deg.empty(),
            "error_e1: direction counts differ");
    std::sort(estimated_deg.begin(), estimated_deg.end());
    std::sort(truth_deg.begin(), truth_deg.end());
    double s = 0.0;
    for (size_t i = 0; i < truth_deg.size(); ++i) {
        const double d = estimated_deg[i] - truth_deg[i];
        s += d * d;
    }
    return std::sqrt(s / truth_deg.size());
}

double error_e2(const std::vector<RVec>& estimated_deg, const std::vector<RVec>& truth_deg) {
    require(estimated_deg.size() == truth_deg.size() && !truth_deg.empty(),
            "error_e2: trial counts differ");
    double s = 0.0;
    size_t count = 0;
    for (size_t p = 0; p < truth_deg.size(); ++p) {
        RVec est = estimated_deg[p], tru = truth_deg[p];
        require(est.size() == tru.size() && !tru.empty(), "error_e2: direction counts differ");
        std::sort(est.begin(), est.end());
        std::sort(tru.begin(), tru.end());
        for (size_t i = 0; i < tru.size(); ++i) {
            const double d = est[i] - tru[i];
            s += d * d;
        }
        count += tru.size();
    }
    return std::sqrt(s / count);
}

double median(RVec values) {
    require(!values.empty(), "median: empty input");
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace dfsmc
