#include "lptime/var_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace lptime {

namespace {

// Selected component columns as a T x k' matrix.
Eigen::MatrixXd component_matrix(const LpSeries& series, const std::vector<int>& comps) {
    Eigen::MatrixXd y(series.length, comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const int j = comps[c];
        if (j < 1 || j > series.k()) throw InvalidArgument("component index out of range");
        for (std::size_t t = 0; t < series.length; ++t) {
            y(t, c) = series.ys[j - 1][t];
        }
    }
    return y;
}

double log_det_psd(const Eigen::MatrixXd& s) {
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    double ld = 0.0;
    for (int i = 0; i < s.rows(); ++i) ld += std::log(llt.matrixL()(i, i));
    return 2.0 * ld;
}

struct OrderFit {
    Eigen::MatrixXd b;     // (k'm) x k' stacked coefficients
    Eigen::MatrixXd sigma; // k' x k'
    std::size_t n_obs = 0;
};

OrderFit fit_order(const Eigen::MatrixXd& y, int m) {
    const int t_len = static_cast<int>(y.rows());
    const int k = static_cast<int>(y.cols());
    OrderFit f;
    f.n_obs = static_cast<std::size_t>(t_len - m);
    if (m == 0) {
        f.sigma = y.transpose() * y / static_cast<double>(t_len);
        return f;
    }
    const int n = t_len - m;
    Eigen::MatrixXd x(n, k * m);
    Eigen::MatrixXd yt(n, k);
    for (int t = 0; t < n; ++t) {
        yt.row(t) = y.row(t + m);
        for (int i = 1; i <= m; ++i) {
            x.block(t, (i - 1) * k, 1, k) = y.row(t + m - i);
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < k * m) throw RankDeficient("lagged regressor matrix is rank deficient");
    f.b = qr.solve(yt);
    const Eigen::MatrixXd resid = yt - x * f.b;
    f.sigma = resid.transpose() * resid / static_cast<double>(n);
    return f;
}

} // namespace

VarModel fit_var(const LpSeries& series, std::vector<int> components, int max_order) {
    if (components.empty()) throw InvalidArgument("component set must be nonempty");
    if (max_order < 0) throw InvalidArgument("max_order must be >= 0");
    const int k = static_cast<int>(components.size());
    const std::size_t t_len = series.length;
    if (max_order > 0 &&
        t_len <= static_cast<std::size_t>(k) * static_cast<std::size_t>(max_order) * 10) {
        throw InsufficientData("series too short for requested VAR order");
    }

    const Eigen::MatrixXd y = component_matrix(series, components);
    const double t = static_cast<double>(t_len);

    VarModel model;
    model.components = std::move(components);
    model.bic_path.resize(max_order + 1);

    int best_m = 0;
    double best_bic = std::numeric_limits<double>::infinity();
    OrderFit best_fit;
    for (int m = 0; m <= max_order; ++m) {
        OrderFit f = fit_order(y, m);
        const double bic = log_det_psd(f.sigma) +
                           static_cast<double>(m) * k * k * std::log(t) / t;
        model.bic_path[m] = bic;
        if (bic < best_bic) {
            best_bic = bic;
            best_m = m;
            best_fit = std::move(f);
        }
    }

    model.order = best_m;
    model.n_obs = best_fit.n_obs;
    model.sigma.assign(k, std::vector<double>(k));
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) model.sigma[r][c] = best_fit.sigma(r, c);
    }
    model.coeff.resize(best_m);
    for (int i = 0; i < best_m; ++i) {
        model.coeff[i].assign(k, std::vector<double>(k));
        // Vec(t) = sum_i A(i) Vec(t-i): A(i) = B_block(i)^T.
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) {
                model.coeff[i][r][c] = best_fit.b(i * k + c, r);
            }
        }
    }

    if (best_m > 0) {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(k * best_m, k * best_m);
        for (int i = 0; i < best_m; ++i) {
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) {
                    comp(r, i * k + c) = model.coeff[i][r][c];
                }
            }
        }
        for (int i = k; i < k * best_m; ++i) comp(i, i - k) = 1.0;
        model.spectral_radius = comp.eigenvalues().cwiseAbs().maxCoeff();
        model.stable = model.spectral_radius < 1.0;
    }
    return model;
}

std::vector<std::vector<double>> var_forecast(const VarModel& model,
                                              const std::vector<std::vector<double>>& history,
                                              int steps) {
    if (steps < 1) throw InvalidArgument("steps must be >= 1");
    if (!model.stable) throw UnstableModel("VAR companion matrix has spectral radius >= 1");
    const int k = model.dim();
    if (history.size() < static_cast<std::size_t>(model.order)) {
        throw InsufficientData("history shorter than model order");
    }
    for (const auto& row : history) {
        if (static_cast<int>(row.size()) != k) {
            throw DimensionMismatch("history row does not match model dimension");
        }
    }

    std::vector<std::vector<double>> buf(history.end() - model.order, history.end());
    std::vector<std::vector<double>> out;
    out.reserve(steps);
    for (int s = 0; s < steps; ++s) {
        std::vector<double> next(k, 0.0);
        for (int i = 1; i <= model.order; ++i) {
            const auto& past = buf[buf.size() - i];
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) {
                    next[r] += model.coeff[i - 1][r][c] * past[c];
                }
            }
        }
        buf.push_back(next);
        if (model.order > 0) buf.erase(buf.begin());
        out.push_back(std::move(next));
    }
    return out;
}

ResidualReport residual_diagnostics(const VarModel& model, const LpSeries& series) {
    const Eigen::MatrixXd y = component_matrix(series, model.components);
    const int k = model.dim();
    const int m = model.order;
    const int n = static_cast<int>(y.rows()) - m;

    Eigen::MatrixXd resid(n, k);
    for (int t = 0; t < n; ++t) {
        Eigen::VectorXd pred = Eigen::VectorXd::Zero(k);
        for (int i = 1; i <= m; ++i) {
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) {
                    pred(r) += model.coeff[i - 1][r][c] * y(t + m - i, c);
                }
            }
        }
        resid.row(t) = y.row(t + m) - pred.transpose();
    }

    constexpr int kLags = 20;
    ResidualReport report;
    report.band = 1.96 / std::sqrt(static_cast<double>(n));
    report.acf.assign(k, std::vector<double>(kLags, 0.0));
    int outside = 0;
    for (int c = 0; c < k; ++c) {
        const double mean = resid.col(c).mean();
        double denom = 0.0;
        for (int t = 0; t < n; ++t) {
            const double d = resid(t, c) - mean;
            denom += d * d;
        }
        for (int h = 1; h <= kLags && h < n; ++h) {
            double s = 0.0;
            for (int t = 0; t + h < n; ++t) {
                s += (resid(t, c) - mean) * (resid(t + h, c) - mean);
            }
            report.acf[c][h - 1] = denom > 0.0 ? s / denom : 0.0;
            if (std::abs(report.acf[c][h - 1]) > report.band) ++outside;
        }
    }
    report.fraction_outside =
        static_cast<double>(outside) / static_cast<double>(k * kLags);
    report.pass = report.fraction_outside <= 0.10;
    return report;
}

} // namespace lptime
