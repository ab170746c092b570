#include "lptime/conditional.hpp"

#include <algorithm>
#include <cmath>

#include "lptime/rng.hpp"

namespace lptime {

namespace {

void check_prob(double u, const char* what) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidProbability(what);
}

// Unnormalized clipped slice density per column cell.
std::vector<double> slice_weights(const CopulaModel& model, double u) {
    std::vector<double> beta(model.matrix.cols);
    for (int m = 0; m < model.matrix.cols; ++m) {
        beta[m] = conditional_beta(model, u, m + 1);
    }
    const std::size_t d = model.col.dist.size();
    std::vector<double> w(d);
    for (std::size_t l = 0; l < d; ++l) {
        double dens = 1.0;
        for (int m = 0; m < model.matrix.cols; ++m) {
            dens += beta[m] * model.col.value[m][l];
        }
        w[l] = std::max(dens, 0.0);
    }
    return w;
}

} // namespace

std::vector<double> skew_g_masses(const CopulaModel& model, double u) {
    check_prob(u, "conditioning level must lie in (0,1)");
    const auto& dist = model.col.dist;
    std::vector<double> w = slice_weights(model, u);
    double total = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l) {
        w[l] *= dist.mass[l];
        total += w[l];
    }
    if (!(total > 0.0)) throw DegenerateCopula("conditional slice has no mass");
    for (double& x : w) x /= total;
    return w;
}

double skew_g_density(const CopulaModel& model, double u, double y) {
    const std::size_t cell = model.col.dist.cell_of_value(y);
    if (cell == MidDistribution::npos) return 0.0;
    return skew_g_masses(model, u)[cell];
}

ConditionalSample sample_conditional(const CopulaModel& model, double u,
                                     std::size_t n_sim, std::uint64_t seed) {
    check_prob(u, "conditioning level must lie in (0,1)");
    if (n_sim == 0) throw InvalidArgument("n_sim must be positive");

    const auto& dist = model.col.dist;
    const std::vector<double> w = slice_weights(model, u);
    const double m_env = *std::max_element(w.begin(), w.end());
    if (!(m_env > 0.0)) throw DegenerateCopula("conditional slice has no mass");

    ConditionalSample out;
    out.u = u;
    out.seed = seed;
    out.draws.reserve(n_sim);

    Rng rng(seed);
    std::size_t proposals = 0;
    while (out.draws.size() < n_sim) {
        const double up = rng.uniform01();
        const std::size_t cell = static_cast<std::size_t>(
            std::upper_bound(dist.cdf.begin(), dist.cdf.end(), up) - dist.cdf.begin());
        ++proposals;
        if (rng.uniform01() * m_env <= w[cell]) {
            out.draws.push_back(dist.distinct[cell]);
        }
    }
    out.acceptance_rate =
        static_cast<double>(n_sim) / static_cast<double>(proposals);
    return out;
}

ConditionalQuantiles conditional_quantiles(const ConditionalSample& cond,
                                           const std::vector<double>& levels) {
    if (levels.empty()) throw InvalidArgument("need at least one level");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0 && levels[i] < 1.0)) {
            throw InvalidProbability("quantile level must lie in (0,1)");
        }
        if (i > 0 && levels[i] < levels[i - 1]) {
            throw InvalidArgument("levels must be sorted ascending");
        }
    }
    std::vector<double> sorted = cond.draws;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    ConditionalQuantiles q;
    q.levels = levels;
    q.values.resize(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        // Left-continuous step inverse: smallest order statistic whose
        // empirical CDF reaches the level.
        std::size_t idx = static_cast<std::size_t>(std::ceil(levels[i] * n));
        if (idx > 0) --idx;
        q.values[i] = sorted[idx];
        if (levels[i] < 1.0 / n) q.extreme_warning = true;
    }
    return q;
}

QiqCurve conditional_qiq(const ConditionalSample& cond, const std::vector<double>& grid) {
    return qiq_curve(SeriesSample(cond.draws), grid);
}

} // namespace lptime
