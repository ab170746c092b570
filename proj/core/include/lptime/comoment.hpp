#pragma once

#include <cstdint>
#include <vector>

#include "lptime/moments.hpp"
#include "lptime/score_basis.hpp"

namespace lptime {

/// Lagged cross-covariance matrix of score components,
/// raw(j,m) = E[YS_j(t) YS_m(t+h)], with an optional BIC-thresholded copy.
/// Row index refers to the earlier variable, column to the later one. For
/// the time-index variant the rows carry Legendre scores of t/T instead.
struct ComomentMatrix {
    enum class Kind { serial, time_index };

    Kind kind = Kind::serial;
    int lag = 0;
    std::size_t n = 0; // effective sample size behind each entry
    int rows = 0;
    int cols = 0;

    std::vector<double> raw;            // row-major rows x cols
    std::vector<double> smooth;         // zero until bic_smooth
    std::vector<std::uint8_t> mask;     // 1 where the entry survived
    std::vector<double> bic_path;       // penalized cumsum, m = 0..rows*cols
    int selected = 0;                   // retained entry count
    bool smoothed = false;

    double raw_at(int j, int m) const { return raw[static_cast<std::size_t>(j) * cols + m]; }
    double smooth_at(int j, int m) const { return smooth[static_cast<std::size_t>(j) * cols + m]; }

    // Coefficients the copula expansion should use.
    const std::vector<double>& effective() const { return smoothed ? smooth : raw; }
};

/// Raw lag-h comoment matrix, overlap-window normalization 1/(T-h).
ComomentMatrix lp_comoment_matrix(const LpSeries& series, int lag);

/// BIC thresholding: keep the m* largest squared entries maximizing
/// cumsum - 2 m log(n)/n; ties in magnitude break by (row, col) order and
/// BIC ties prefer fewer entries. Idempotent.
ComomentMatrix bic_smooth(ComomentMatrix matrix);

/// Pearson correlation reconstruction sum_{j,m} LP_a(j) C(j,m) LP_b(m).
double lp_autocorrelation(const LpMomentVector& a, const LpMomentVector& b,
                          const ComomentMatrix& matrix, bool use_smooth);

struct Correlogram {
    int max_lag = 0;
    double band = 0.0;                        // +-1.96/sqrt(T)
    std::vector<std::vector<double>> acf;     // acf[j-1][h-1]
};

/// Autocorrelation of every score component, the diagonal comoments.
Correlogram lp_correlogram(const LpSeries& series, int max_lag);

/// Comoments of the time index against the score components,
/// entry (j,m) = mean of Leg_j((t-1/2)/T) * YS_m(t).
ComomentMatrix nonstationarity_comoment(const SeriesSample& sample, int k);

/// Sum of squared entries (selected entries only when use_smooth).
double lpinfor_stat(const ComomentMatrix& matrix, bool use_smooth);

} // namespace lptime
