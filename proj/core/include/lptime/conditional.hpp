#pragma once

#include <cstdint>
#include <vector>

#include "lptime/copula.hpp"
#include "lptime/empirical.hpp"

namespace lptime {

/// Draws simulated from the conditional distribution of Y(t+h) given
/// Y(t) = Q(u). Every draw is a value from the original sample's support.
struct ConditionalSample {
    double u = 0.0;
    std::vector<double> draws;
    std::uint64_t seed = 0;
    double acceptance_rate = 0.0;
};

/// Skew-G conditional masses on the support: the unconditional empirical
/// masses reweighted by the clipped comparison-density slice at level u and
/// renormalized. Sums to 1.
std::vector<double> skew_g_masses(const CopulaModel& model, double u);

/// Conditional mass at one support value y; 0 off the support.
double skew_g_density(const CopulaModel& model, double u, double y);

/// Accept-reject sampling from the skew-G conditional law. Proposal is a
/// uniform resample of the observed sample; the acceptance envelope is the
/// slice maximum, so the accepted draws follow skew_g_masses exactly.
/// Deterministic for a fixed seed.
ConditionalSample sample_conditional(const CopulaModel& model, double u,
                                     std::size_t n_sim, std::uint64_t seed);

struct ConditionalQuantiles {
    std::vector<double> levels;
    std::vector<double> values;   // nondecreasing across levels
    bool extreme_warning = false; // some level below 1/n_sim
};

/// Empirical quantiles of the draws; non-crossing by construction.
ConditionalQuantiles conditional_quantiles(const ConditionalSample& cond,
                                           const std::vector<double>& levels);

QiqCurve conditional_qiq(const ConditionalSample& cond, const std::vector<double>& grid);

} // namespace lptime
