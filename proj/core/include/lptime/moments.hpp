#pragma once

#include <array>
#include <string>
#include <vector>

#include "lptime/score_basis.hpp"

namespace lptime {

/// LP moment vector LP(j) = E[Z(Y) * YS_j], j = 1..k_used. The squared
/// moments partial-sum the variance of Z, so cumsq is nondecreasing with
/// limit 1 for a complete basis.
struct LpMomentVector {
    std::vector<double> values;
    std::vector<double> cumsq;
    int k_used = 0;
    bool capped = false;
};

LpMomentVector lp_moments(const SeriesSample& sample, int k_moments);
LpMomentVector lp_moments(const LpSeries& series);

/// Analytic first LP moment of the standard normal, sqrt(3/pi).
double lp_moment_normal_first();

struct TailIndex {
    int index = 0;
    bool saturated = false;
};

/// Smallest j whose cumulative squared moment sum exceeds the threshold;
/// saturated when the threshold is never crossed within k_used.
TailIndex lp_tail_index(const LpMomentVector& moments, double threshold = 0.95);

/// Partial-sum reconstruction of the normalized quantile function,
/// Q(u; Z) ~= sum_j LP(j) S_j(u).
double quantile_reconstruction(const LpMomentVector& moments, const ScoreBasis& basis,
                               double u);

/// Reference first-four LP moments of standard distributions, used for the
/// "closest standard distribution" diagnostic.
struct ReferenceDistribution {
    std::string name;
    std::array<double, 4> lp;
};

const std::vector<ReferenceDistribution>& reference_lp_table();

/// Nearest reference by Euclidean distance over the first four LP moments
/// (fewer when the basis was capped shorter).
const ReferenceDistribution& nearest_reference(const LpMomentVector& moments);

} // namespace lptime
