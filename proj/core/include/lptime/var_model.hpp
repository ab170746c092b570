#pragma once

#include <vector>

#include "lptime/score_basis.hpp"

namespace lptime {

/// Multiple autoregression over a subset of score components, fitted by
/// conditional least squares with BIC order selection.
struct VarModel {
    std::vector<int> components;  // 1-based YS indices included
    int order = 0;
    // coeff[i] is the (k' x k') matrix applied to Vec(t - i - 1), row-major.
    std::vector<std::vector<std::vector<double>>> coeff;
    std::vector<std::vector<double>> sigma; // residual covariance, k' x k'
    std::vector<double> bic_path;           // m = 0..max_order
    std::size_t n_obs = 0;
    double spectral_radius = 0.0;
    bool stable = true;

    int dim() const { return static_cast<int>(components.size()); }
};

VarModel fit_var(const LpSeries& series, std::vector<int> components, int max_order);

/// Iterated linear prediction with innovations set to zero. history holds
/// recent component vectors, oldest first, history.back() the most recent.
std::vector<std::vector<double>> var_forecast(const VarModel& model,
                                              const std::vector<std::vector<double>>& history,
                                              int steps);

struct ResidualReport {
    double band = 0.0;                    // +-1.96/sqrt(n_obs)
    std::vector<std::vector<double>> acf; // acf[component][lag-1], lags 1..20
    double fraction_outside = 0.0;
    bool pass = false; // fraction_outside <= 0.10
};

ResidualReport residual_diagnostics(const VarModel& model, const LpSeries& series);

} // namespace lptime
