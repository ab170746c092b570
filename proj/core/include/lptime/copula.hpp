#pragma once

#include "lptime/comoment.hpp"
#include "lptime/score_basis.hpp"

namespace lptime {

/// Orthogonal-series copula model: cop(u,v) - 1 = sum C(j,m) S_j(u) S_m(v)
/// with C the (normally BIC-smoothed) comoment matrix, S_j the row-side
/// scores and S_m the column-side scores. For the serial copula of one
/// series both sides share the sample's score basis; the time-index variant
/// carries Legendre scores on the row side.
struct CopulaModel {
    ComomentMatrix matrix;
    ScoreBasis row;
    ScoreBasis col;

    static CopulaModel serial(const LpSeries& series, ComomentMatrix smoothed);
    static CopulaModel time_index(const LpSeries& series, ComomentMatrix smoothed);
};

/// Raw orthogonal-series density; may be negative.
double copula_density(const CopulaModel& model, double u, double v);

/// Mass of the positive part, Z = integral of max(cop, 0); always >= 1.
double clipped_normalizer(const CopulaModel& model);

/// max(cop, 0)/Z, a bona fide density.
double clipped_density(const CopulaModel& model, double u, double v, double z);

/// Squared Frobenius norm of the expansion coefficients; equals
/// the integral of cop^2 minus 1.
double auto_lpinfor(const CopulaModel& model);

/// KL-type divergence from uniformity, cellwise integral of cop log cop over
/// the clipped density. Near independence it approaches auto_lpinfor / 2.
double granger_lin(const CopulaModel& model);

/// Copula distribution function Cop(u,v), exact term-wise integration.
double copula_cdf(const CopulaModel& model, double u, double v);

/// Diagonal tail-dependence profile lambda(u) built from Cop(u,u).
double quantile_correlation(const CopulaModel& model, double u);

/// Same profile for a Gaussian copula with correlation rho, the parametric
/// reference curve.
double gaussian_copula_curve(double rho, double u);

/// Medial correlation, beta = -1 + 4 Cop(1/2, 1/2).
double blomqvist_beta(const CopulaModel& model);

/// Coefficient of S_m in the conditional comparison density at level u:
/// beta_m(u) = sum_j S_j(u) C(j,m).
double conditional_beta(const CopulaModel& model, double u, int m);

/// sum_m beta_m(u)^2 = integral of d(v;u)^2 dv - 1.
double conditional_lpinfor(const CopulaModel& model, double u);

/// Comparison density of Y(t+h) given Y(t) at quantile level u; identical to
/// the copula density slice.
double conditional_comparison_density(const CopulaModel& model, double u, double v);

} // namespace lptime
