#include "lptime/copula.hpp"

#include <algorithm>
#include <cmath>

#include "lptime/normal.hpp"

namespace lptime {

namespace {

void check_prob(double u, const char* what) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidProbability(what);
}

// Scores of every model row function at one u.
std::vector<double> row_scores(const CopulaModel& model, double u) {
    std::vector<double> s(model.matrix.rows);
    const std::size_t cell = model.row.dist.cell_of_probability(u);
    for (int j = 0; j < model.matrix.rows; ++j) s[j] = model.row.value[j][cell];
    return s;
}

// w[m] = sum_j s[j] * C(j,m), the slice expansion coefficients.
std::vector<double> slice_coefficients(const CopulaModel& model,
                                       const std::vector<double>& s) {
    const auto& c = model.matrix.effective();
    std::vector<double> w(model.matrix.cols, 0.0);
    for (int j = 0; j < model.matrix.rows; ++j) {
        if (s[j] == 0.0) continue;
        for (int m = 0; m < model.matrix.cols; ++m) {
            w[m] += s[j] * c[static_cast<std::size_t>(j) * model.matrix.cols + m];
        }
    }
    return w;
}

// Twice-nested cell sweep shared by the exact integrals. fn receives the cell
// probability mass and the raw density value there.
template <typename Fn>
void for_each_cell(const CopulaModel& model, Fn&& fn) {
    const auto& c = model.matrix.effective();
    const std::size_t dr = model.row.dist.size();
    const std::size_t dc = model.col.dist.size();
    const int rows = model.matrix.rows;
    const int cols = model.matrix.cols;

    // wrow[i][m] = sum_j C(j,m) * rowvalue[j][i]
    std::vector<double> wrow(dr * static_cast<std::size_t>(cols), 0.0);
    for (std::size_t i = 0; i < dr; ++i) {
        for (int j = 0; j < rows; ++j) {
            const double rv = model.row.value[j][i];
            if (rv == 0.0) continue;
            for (int m = 0; m < cols; ++m) {
                wrow[i * cols + m] += c[static_cast<std::size_t>(j) * cols + m] * rv;
            }
        }
    }
    for (std::size_t i = 0; i < dr; ++i) {
        const double pi = model.row.dist.mass[i];
        const double* wi = &wrow[i * cols];
        for (std::size_t l = 0; l < dc; ++l) {
            double dens = 1.0;
            for (int m = 0; m < cols; ++m) dens += wi[m] * model.col.value[m][l];
            fn(pi * model.col.dist.mass[l], dens);
        }
    }
}

} // namespace

CopulaModel CopulaModel::serial(const LpSeries& series, ComomentMatrix smoothed) {
    if (smoothed.rows != series.k() || smoothed.cols != series.k()) {
        throw DimensionMismatch("comoment matrix does not match score basis");
    }
    return CopulaModel{std::move(smoothed), series.basis, series.basis};
}

CopulaModel CopulaModel::time_index(const LpSeries& series, ComomentMatrix smoothed) {
    if (smoothed.kind != ComomentMatrix::Kind::time_index) {
        throw InvalidArgument("expected a time-index comoment matrix");
    }
    return CopulaModel{std::move(smoothed), time_index_scores(series.length, smoothed.rows),
                       series.basis};
}

double copula_density(const CopulaModel& model, double u, double v) {
    check_prob(u, "copula u argument must lie in (0,1)");
    check_prob(v, "copula v argument must lie in (0,1)");
    const auto s = row_scores(model, u);
    const auto w = slice_coefficients(model, s);
    const std::size_t cell = model.col.dist.cell_of_probability(v);
    double dens = 1.0;
    for (int m = 0; m < model.matrix.cols; ++m) dens += w[m] * model.col.value[m][cell];
    return dens;
}

double clipped_normalizer(const CopulaModel& model) {
    double z = 0.0;
    for_each_cell(model, [&](double mass, double dens) {
        if (dens > 0.0) z += mass * dens;
    });
    if (!(z > 0.0)) throw DegenerateCopula("clipped copula density has no mass");
    return z;
}

double clipped_density(const CopulaModel& model, double u, double v, double z) {
    if (!(z > 0.0)) throw DegenerateCopula("normalizer must be positive");
    return std::max(copula_density(model, u, v), 0.0) / z;
}

double auto_lpinfor(const CopulaModel& model) {
    const auto& c = model.matrix.effective();
    double s = 0.0;
    for (double e : c) s += e * e;
    return s;
}

double granger_lin(const CopulaModel& model) {
    const double z = clipped_normalizer(model);
    double gl = 0.0;
    for_each_cell(model, [&](double mass, double dens) {
        if (dens <= 0.0) return;
        const double d = dens / z;
        gl += mass * d * std::log(std::max(d, 1e-12));
    });
    return gl;
}

double copula_cdf(const CopulaModel& model, double u, double v) {
    check_prob(u, "copula u argument must lie in (0,1)");
    check_prob(v, "copula v argument must lie in (0,1)");
    const auto& c = model.matrix.effective();
    double acc = u * v;
    for (int j = 0; j < model.matrix.rows; ++j) {
        const double iu = model.row.integral(j + 1, u);
        if (iu == 0.0) continue;
        for (int m = 0; m < model.matrix.cols; ++m) {
            const double e = c[static_cast<std::size_t>(j) * model.matrix.cols + m];
            if (e == 0.0) continue;
            acc += e * iu * model.col.integral(m + 1, v);
        }
    }
    return acc;
}

double quantile_correlation(const CopulaModel& model, double u) {
    check_prob(u, "quantile correlation level must lie in (0,1)");
    const double cop = copula_cdf(model, u, u);
    if (u <= 0.5) return cop / u;
    return (1.0 - 2.0 * u + cop) / (1.0 - u);
}

double gaussian_copula_curve(double rho, double u) {
    check_prob(u, "quantile correlation level must lie in (0,1)");
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw InvalidArgument("correlation must lie in [-1,1]");
    }
    const double x = normal_quantile(u);
    const double cop = bivariate_normal_cdf(x, x, rho);
    if (u <= 0.5) return cop / u;
    return (1.0 - 2.0 * u + cop) / (1.0 - u);
}

double blomqvist_beta(const CopulaModel& model) {
    const auto& c = model.matrix.effective();
    double acc = 0.0;
    for (int j = 0; j < model.matrix.rows; ++j) {
        const double iu = model.row.integral(j + 1, 0.5);
        if (iu == 0.0) continue;
        for (int m = 0; m < model.matrix.cols; ++m) {
            const double e = c[static_cast<std::size_t>(j) * model.matrix.cols + m];
            if (e == 0.0) continue;
            acc += e * iu * model.col.integral(m + 1, 0.5);
        }
    }
    return 4.0 * acc;
}

double conditional_beta(const CopulaModel& model, double u, int m) {
    check_prob(u, "conditioning level must lie in (0,1)");
    if (m < 1 || m > model.matrix.cols) throw InvalidArgument("component index out of range");
    const auto s = row_scores(model, u);
    const auto& c = model.matrix.effective();
    double acc = 0.0;
    for (int j = 0; j < model.matrix.rows; ++j) {
        acc += s[j] * c[static_cast<std::size_t>(j) * model.matrix.cols + (m - 1)];
    }
    return acc;
}

double conditional_lpinfor(const CopulaModel& model, double u) {
    check_prob(u, "conditioning level must lie in (0,1)");
    const auto s = row_scores(model, u);
    const auto w = slice_coefficients(model, s);
    double acc = 0.0;
    for (double b : w) acc += b * b;
    return acc;
}

double conditional_comparison_density(const CopulaModel& model, double u, double v) {
    return copula_density(model, u, v);
}

} // namespace lptime
