#pragma once

#include <cstddef>
#include <vector>

#include "lptime/empirical.hpp"

namespace lptime {

/// Data-adaptive orthonormal score functions over a sample's support.
///
/// T_1 standardizes the mid-distribution rank; higher functions come from
/// Gram-Schmidt on polynomials in T_1 under the empirical measure, so
/// E[T_i T_j] = delta_ij and E[T_j] = 0 hold exactly for the sample that
/// built the basis. For tie-free data the functions converge to the shifted
/// orthonormal Legendre polynomials.
///
/// On the unit interval each score is piecewise constant over the CDF cells
/// of the support: S_j(u) equals T_j at the left-continuous quantile Q(u).
struct ScoreBasis {
    int k = 0;               // number of score functions actually built
    int requested_k = 0;
    bool capped = false;     // k was reduced (support size or collinearity)

    MidDistribution dist;

    // value[j-1][i] = T_j at distinct[i]
    std::vector<std::vector<double>> value;

    // poly[j-1] = coefficients of T_j as a polynomial in T_1 (degree j),
    // poly[j-1][l] multiplying T_1^l. Empty for analytic (table-only) bases.
    std::vector<std::vector<double>> poly;

    // prefix[j-1][i] = sum_{l<=i} mass[l] * value[j-1][l]
    std::vector<std::vector<double>> prefix;

    double score_at_cell(int j, std::size_t cell) const { return value[j - 1][cell]; }

    // S_j(u); u in (0,1).
    double eval(int j, double u) const;

    // I_j(u) = integral of S_j over (0, u]; exact on the cell partition.
    double integral(int j, double u) const;
};

/// Gram-Schmidt construction of k orthonormal scores from a mid-distribution.
/// Requests beyond (#distinct - 1) or past numerical collinearity are capped
/// and flagged rather than rejected.
ScoreBasis build_score_basis(const MidDistribution& dist, int k);

/// Shifted orthonormal Legendre polynomial Leg_j on (0,1):
/// zero mean, unit norm under Lebesgue measure, Leg_1(u) = sqrt(12)(u - 1/2).
double legendre_score(int j, double u);

double eval_score(const ScoreBasis& basis, int j, double u);

/// Scores for the time index 1..T viewed as covariate: its mid-ranks are the
/// equispaced points (t - 1/2)/T, where the analytic Legendre scores are the
/// natural (asymptotically exact) choice.
ScoreBasis time_index_scores(std::size_t t_len, int k);

/// The k-column transformed series YS_j(t) = T_j applied to observation t,
/// together with the normalized source series Z.
struct LpSeries {
    std::vector<std::vector<double>> ys; // ys[j-1][t]
    std::vector<double> z;               // normalized source series
    ScoreBasis basis;
    std::size_t length = 0;

    int k() const { return basis.k; }
};

LpSeries lp_transform(const SeriesSample& sample, int k);

} // namespace lptime
