#include "lptime/comoment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lptime {

ComomentMatrix lp_comoment_matrix(const LpSeries& series, int lag) {
    if (lag < 1) throw InvalidArgument("comoment lag must be >= 1");
    const std::size_t t_len = series.length;
    if (t_len < static_cast<std::size_t>(lag) + 10) {
        throw InsufficientOverlap("lag leaves fewer than 10 overlapping pairs");
    }
    const int k = series.k();
    const std::size_t n = t_len - static_cast<std::size_t>(lag);

    ComomentMatrix m;
    m.lag = lag;
    m.n = n;
    m.rows = k;
    m.cols = k;
    m.raw.assign(static_cast<std::size_t>(k) * k, 0.0);
    for (int j = 0; j < k; ++j) {
        const auto& a = series.ys[j];
        for (int c = 0; c < k; ++c) {
            const auto& b = series.ys[c];
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += a[t] * b[t + lag];
            m.raw[static_cast<std::size_t>(j) * k + c] = s / static_cast<double>(n);
        }
    }
    m.smooth.assign(m.raw.size(), 0.0);
    m.mask.assign(m.raw.size(), 0);
    return m;
}

ComomentMatrix bic_smooth(ComomentMatrix matrix) {
    const std::size_t total = matrix.raw.size();
    const double n = static_cast<double>(matrix.n);
    const double penalty = 2.0 * std::log(n) / n;

    // Source entries: the raw matrix normally; re-smoothing a smooth matrix
    // must reproduce it, so smooth entries feed the ranking then. Copied,
    // since matrix.smooth is rewritten below.
    const std::vector<double> src = matrix.smoothed ? matrix.smooth : matrix.raw;

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return src[a] * src[a] > src[b] * src[b];
    });

    matrix.bic_path.assign(total + 1, 0.0);
    double cum = 0.0;
    double best = 0.0;
    std::size_t best_m = 0;
    for (std::size_t m = 1; m <= total; ++m) {
        const double c = src[order[m - 1]];
        cum += c * c;
        matrix.bic_path[m] = cum - penalty * static_cast<double>(m);
        if (matrix.bic_path[m] > best) {
            best = matrix.bic_path[m];
            best_m = m;
        }
    }

    matrix.smooth.assign(total, 0.0);
    matrix.mask.assign(total, 0);
    for (std::size_t i = 0; i < best_m; ++i) {
        matrix.smooth[order[i]] = src[order[i]];
        matrix.mask[order[i]] = 1;
    }
    matrix.selected = static_cast<int>(best_m);
    matrix.smoothed = true;
    return matrix;
}

double lp_autocorrelation(const LpMomentVector& a, const LpMomentVector& b,
                          const ComomentMatrix& matrix, bool use_smooth) {
    if (a.k_used != matrix.rows || b.k_used != matrix.cols) {
        throw DimensionMismatch("moment vectors do not match comoment matrix");
    }
    const std::vector<double>& entries = use_smooth ? matrix.smooth : matrix.raw;
    double r = 0.0;
    for (int j = 0; j < matrix.rows; ++j) {
        for (int m = 0; m < matrix.cols; ++m) {
            r += a.values[j] * entries[static_cast<std::size_t>(j) * matrix.cols + m] *
                 b.values[m];
        }
    }
    return r;
}

Correlogram lp_correlogram(const LpSeries& series, int max_lag) {
    if (max_lag < 1) throw InvalidArgument("max_lag must be >= 1");
    if (static_cast<std::size_t>(max_lag) * 4 >= series.length) {
        throw InsufficientOverlap("max_lag must be below T/4");
    }
    Correlogram c;
    c.max_lag = max_lag;
    c.band = 1.96 / std::sqrt(static_cast<double>(series.length));
    c.acf.assign(series.k(), std::vector<double>(max_lag));
    for (int j = 0; j < series.k(); ++j) {
        const auto& col = series.ys[j];
        for (int h = 1; h <= max_lag; ++h) {
            const std::size_t n = series.length - static_cast<std::size_t>(h);
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += col[t] * col[t + h];
            c.acf[j][h - 1] = s / static_cast<double>(n);
        }
    }
    return c;
}

ComomentMatrix nonstationarity_comoment(const SeriesSample& sample, int k) {
    const LpSeries series = lp_transform(sample, k);
    const std::size_t t_len = series.length;
    const int kc = series.k();

    ComomentMatrix m;
    m.kind = ComomentMatrix::Kind::time_index;
    m.lag = 0;
    m.n = t_len;
    m.rows = kc;
    m.cols = kc;
    m.raw.assign(static_cast<std::size_t>(kc) * kc, 0.0);

    // Time mid-ranks are equispaced, so analytic Legendre scores are exact.
    std::vector<std::vector<double>> leg(kc, std::vector<double>(t_len));
    for (int j = 1; j <= kc; ++j) {
        for (std::size_t t = 0; t < t_len; ++t) {
            leg[j - 1][t] = legendre_score(j, (static_cast<double>(t) + 0.5) /
                                                  static_cast<double>(t_len));
        }
    }
    for (int j = 0; j < kc; ++j) {
        for (int c = 0; c < kc; ++c) {
            double s = 0.0;
            for (std::size_t t = 0; t < t_len; ++t) s += leg[j][t] * series.ys[c][t];
            m.raw[static_cast<std::size_t>(j) * kc + c] = s / static_cast<double>(t_len);
        }
    }
    m.smooth.assign(m.raw.size(), 0.0);
    m.mask.assign(m.raw.size(), 0);
    return m;
}

double lpinfor_stat(const ComomentMatrix& matrix, bool use_smooth) {
    const std::vector<double>& entries = use_smooth ? matrix.smooth : matrix.raw;
    double s = 0.0;
    for (double e : entries) s += e * e;
    return s;
}

} // namespace lptime
