#pragma once

#include <string>
#include <vector>

#include "lptime/comoment.hpp"
#include "lptime/score_basis.hpp"

namespace lptime {

/// Burg lattice fit. The recursion records coefficients and innovation
/// variance at every order, so any order up to max_order can be read off
/// after the fact. Reflection coefficients stay inside (-1,1), which keeps
/// every recorded model stable.
struct ArFit {
    int max_order = 0;
    std::vector<std::vector<double>> coeff_path; // coeff_path[m] = a(1..m)
    std::vector<double> sigma2_path;             // sigma2_path[m], m = 0..max
    std::vector<double> reflection;              // k_1..k_max
    int selected = -1;                           // set by select_order
    std::vector<double> criterion_path;          // filled by select_order

    const std::vector<double>& coeffs(int order) const { return coeff_path[order]; }
    double sigma2(int order) const { return sigma2_path[order]; }
};

ArFit burg_fit(const std::vector<double>& series, int max_order);

enum class OrderCriterion { aic, bic };

/// Minimizes log sigma2_m + c m / n with c = 2 (AIC) or log n (BIC);
/// ties go to the smaller order. Records the choice on the fit.
int select_order(ArFit& fit, OrderCriterion criterion, std::size_t n);

struct SpectralCurve {
    std::vector<double> omega;
    std::vector<double> density;
};

/// f(w) = sigma2 / |1 - sum a_k exp(2 pi i w k)|^2 on the given grid.
SpectralCurve ar_spectral_density(const std::vector<double>& coeffs, double sigma2,
                                  const std::vector<double>& omega);

/// Default folded grid: n points on [0, 1/2].
std::vector<double> default_omega_grid(std::size_t n = 512);

struct ComponentSpectrum {
    std::string name; // "Z", "YS1", ...
    ArFit fit;
    int order = 0;
    bool flat = false; // BIC chose order 0
    SpectralCurve curve;
};

/// Burg + BIC + spectral curve for the normalized series and every score
/// component. Flat components are flagged for downstream component
/// selection.
std::vector<ComponentSpectrum> lp_spectrum(const LpSeries& series, int max_order,
                                           const std::vector<double>& omega);

struct CopulaSpectrum {
    SpectralCurve curve; // real part
    double max_imag = 0.0;
};

/// Truncated copula spectral density at a fixed (u,v):
/// 1 + sum_{0<|h|<=H} (cop(u,v;h) - 1) e^{-i 2 pi h w}, with
/// cop(u,v;-h) = cop(v,u;h). Real part returned; the imaginary remainder is
/// reported (zero when every lag matrix is symmetric).
CopulaSpectrum copula_spectral_density(const ScoreBasis& basis,
                                       const std::vector<ComomentMatrix>& per_lag,
                                       double u, double v,
                                       const std::vector<double>& omega);

} // namespace lptime
