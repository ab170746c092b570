#include "lptime/empirical.hpp"

#include <algorithm>
#include <cmath>

namespace lptime {

SeriesSample::SeriesSample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw Error("series needs at least 2 observations");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error("series contains a non-finite value");
        }
    }
}

std::size_t MidDistribution::cell_of_value(double y) const {
    auto it = std::lower_bound(distinct.begin(), distinct.end(), y);
    if (it == distinct.end() || *it != y) return npos;
    return static_cast<std::size_t>(it - distinct.begin());
}

std::size_t MidDistribution::cell_of_probability(double u) const {
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it; // u == 1 boundary, guarded by callers
    return static_cast<std::size_t>(it - cdf.begin());
}

MidDistribution MidDistribution::from_masses(std::vector<double> values,
                                             std::vector<double> masses) {
    if (values.size() != masses.size() || values.size() < 2) {
        throw InvalidArgument("support/mass specification invalid");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw InvalidArgument("support values must be strictly increasing");
        }
        if (!(masses[i] > 0.0)) {
            throw InvalidArgument("masses must be strictly positive");
        }
        total += masses[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidArgument("masses must sum to 1");
    }
    MidDistribution d;
    d.distinct = std::move(values);
    d.mass = std::move(masses);
    d.cdf.resize(d.mass.size());
    d.middist.resize(d.mass.size());
    double run = 0.0;
    for (std::size_t i = 0; i < d.mass.size(); ++i) {
        run += d.mass[i];
        d.cdf[i] = run;
        d.middist[i] = run - d.mass[i] / 2.0;
    }
    d.cdf.back() = 1.0;
    return d;
}

MidDistribution mid_distribution(const SeriesSample& sample) {
    std::vector<double> sorted = sample.values();
    std::sort(sorted.begin(), sorted.end());

    MidDistribution d;
    const double t = static_cast<double>(sorted.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        d.distinct.push_back(sorted[i]);
        d.mass.push_back(static_cast<double>(j - i) / t);
        i = j;
    }
    if (d.distinct.size() < 2) {
        throw DegenerateDistribution("all observations share one value");
    }
    d.cdf.resize(d.mass.size());
    d.middist.resize(d.mass.size());
    double run = 0.0;
    for (std::size_t c = 0; c < d.mass.size(); ++c) {
        run += d.mass[c];
        d.cdf[c] = run;
        d.middist[c] = run - d.mass[c] / 2.0;
    }
    d.cdf.back() = 1.0;
    return d;
}

std::vector<double> mid_rank_series(const SeriesSample& sample) {
    MidDistribution d = mid_distribution(sample);
    std::vector<double> out(sample.size());
    for (std::size_t t = 0; t < sample.size(); ++t) {
        out[t] = d.middist[d.cell_of_value(sample[t])];
    }
    return out;
}

double quantile(const MidDistribution& dist, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw InvalidProbability("quantile level must lie in (0,1)");
    }
    return dist.distinct[dist.cell_of_probability(u)];
}

double empirical_quantile(const SeriesSample& sample, double u) {
    return quantile(mid_distribution(sample), u);
}

std::vector<double> normalize(const SeriesSample& sample) {
    const auto& v = sample.values();
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    if (*mn == *mx) {
        throw DegenerateDistribution("constant series has zero variance");
    }
    const double t = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= t;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= t;
    const double sd = std::sqrt(var);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
    return out;
}

QiqCurve qiq_curve(const MidDistribution& dist, const std::vector<double>& grid) {
    const double q1 = quantile(dist, 0.25);
    const double q3 = quantile(dist, 0.75);
    if (q3 == q1) {
        throw DegenerateDistribution("quartiles coincide, QIQ undefined");
    }
    QiqCurve c;
    c.mid_quartile = (q1 + q3) / 2.0;
    c.quartile_deviation = 2.0 * (q3 - q1);
    c.grid = grid;
    c.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        c.values[i] = (quantile(dist, grid[i]) - c.mid_quartile) / c.quartile_deviation;
    }
    return c;
}

QiqCurve qiq_curve(const SeriesSample& sample, const std::vector<double>& grid) {
    return qiq_curve(mid_distribution(sample), grid);
}

std::vector<double> probability_grid(std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1);
    }
    return g;
}

} // namespace lptime
