#pragma once

#include <cstddef>
#include <vector>

#include "lptime/errors.hpp"

namespace lptime {

/// Ordered raw observations of one series. Order is observation order and is
/// never re-sorted. Construction validates length >= 2 and finiteness of
/// every value; NaN and infinities are rejected outright.
class SeriesSample {
public:
    explicit SeriesSample(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t t) const { return values_[t]; }

private:
    std::vector<double> values_;
};

/// Empirical mid-distribution: sorted distinct values, their probability
/// masses, the step CDF and the mid-distribution values
/// middist[i] = cdf[i] - mass[i]/2.
struct MidDistribution {
    std::vector<double> distinct; // strictly increasing
    std::vector<double> mass;     // > 0, sums to 1
    std::vector<double> cdf;      // running sum, last element exactly 1
    std::vector<double> middist;  // strictly increasing, in (0, 1)

    std::size_t size() const { return distinct.size(); }

    // Index of the cell containing a support value, or npos when y is not a
    // support point.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t cell_of_value(double y) const;

    // Cell of the left-continuous quantile at u in (0, 1): smallest i with
    // cdf[i] >= u.
    std::size_t cell_of_probability(double u) const;

    // Build directly from a support/mass specification (values strictly
    // increasing, masses positive and summing to 1 within 1e-12).
    static MidDistribution from_masses(std::vector<double> values,
                                       std::vector<double> masses);
};

/// Informative quantile function values on a probability grid, together with
/// the mid-quartile MQ and the quartile deviation DQ = 2(Q3 - Q1). By
/// construction qiq(.25) = -.25 and qiq(.75) = +.25.
struct QiqCurve {
    std::vector<double> grid;
    std::vector<double> values;
    double mid_quartile = 0.0;
    double quartile_deviation = 0.0;
};

MidDistribution mid_distribution(const SeriesSample& sample);

// Mid-distribution rank of each observation, in observation order.
std::vector<double> mid_rank_series(const SeriesSample& sample);

// Left-continuous step inverse of the empirical CDF.
double quantile(const MidDistribution& dist, double u);
double empirical_quantile(const SeriesSample& sample, double u);

// Center and scale to sample mean 0, variance 1 (divisor T).
std::vector<double> normalize(const SeriesSample& sample);

QiqCurve qiq_curve(const MidDistribution& dist, const std::vector<double>& grid);
QiqCurve qiq_curve(const SeriesSample& sample, const std::vector<double>& grid);

// Evenly spaced interior grid u_i = i/(n+1), i = 1..n.
std::vector<double> probability_grid(std::size_t n);

} // namespace lptime
