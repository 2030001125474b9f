#pragma once

#include <vector>

#include "dfsmc/dictionary.hpp"
#include "dfsmc/types.hpp"

namespace dfsmc {

// Indices of the k strongest spectrum peaks, in selection order. A peak is a
// strict local maximum (boundary bins compare one-sided); equal peaks resolve
// toward the lower index. When fewer than k local maxima exist, the remaining
// picks are the largest non-peak bins.
std::vector<int> pick_peak_indices(const RVec& power, int k);

// Picked directions zeta_u + nu_u for the k strongest peaks, sorted ascending
// (radians). offsets may be empty, meaning all-zero.
RVec pick_peaks(const RVec& power, const RVec& offsets, const Grid& grid, int k);

// Single-trial RMSE over the K directions, degrees. Pairing is by sorted
// order; inputs need not be pre-sorted.
double error_e1(RVec estimated_deg, RVec truth_deg);

// Pooled RMSE over P trials, degrees: sqrt( (1/KP) sum_p ||est_p - truth_p||^2 ).
double error_e2(const std::vector<RVec>& estimated_deg, const std::vector<RVec>& truth_deg);

double median(RVec values);

constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

}  // namespace dfsmc
