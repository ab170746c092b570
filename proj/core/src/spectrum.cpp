#include "lptime/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Eigenvalues>

namespace lptime {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double companion_spectral_radius(const std::vector<double>& coeffs) {
    const int m = static_cast<int>(coeffs.size());
    if (m == 0) return 0.0;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) comp(0, i) = coeffs[i];
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    return comp.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

ArFit burg_fit(const std::vector<double>& series, int max_order) {
    const std::size_t n = series.size();
    if (max_order < 0) throw InvalidArgument("max_order must be >= 0");
    if (n <= 2 * static_cast<std::size_t>(std::max(max_order, 1))) {
        throw InsufficientData("series too short for requested order");
    }

    ArFit fit;
    fit.max_order = max_order;
    fit.coeff_path.resize(max_order + 1);
    fit.sigma2_path.resize(max_order + 1);

    double e0 = 0.0;
    for (double x : series) e0 += x * x;
    e0 /= static_cast<double>(n);
    fit.sigma2_path[0] = e0;

    std::vector<double> fwd(series);
    std::vector<double> bwd(series);
    std::vector<double> a; // prediction coefficients of the current order

    for (int m = 1; m <= max_order; ++m) {
        double num = 0.0, den = 0.0;
        for (std::size_t t = m; t < n; ++t) {
            num += fwd[t] * bwd[t - 1];
            den += fwd[t] * fwd[t] + bwd[t - 1] * bwd[t - 1];
        }
        const double k = den > 0.0 ? 2.0 * num / den : 0.0;
        fit.reflection.push_back(k);

        std::vector<double> a_next(m);
        for (int i = 0; i < m - 1; ++i) a_next[i] = a[i] - k * a[m - 2 - i];
        a_next[m - 1] = k;
        a = std::move(a_next);

        for (std::size_t t = n - 1; t >= static_cast<std::size_t>(m); --t) {
            const double f_old = fwd[t];
            fwd[t] = f_old - k * bwd[t - 1];
            bwd[t] = bwd[t - 1] - k * f_old;
        }

        fit.sigma2_path[m] = fit.sigma2_path[m - 1] * (1.0 - k * k);
        fit.coeff_path[m] = a;
    }
    return fit;
}

int select_order(ArFit& fit, OrderCriterion criterion, std::size_t n) {
    const double c = criterion == OrderCriterion::aic
                         ? 2.0
                         : std::log(static_cast<double>(n));
    fit.criterion_path.resize(fit.sigma2_path.size());
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < fit.sigma2_path.size(); ++m) {
        const double s2 = fit.sigma2_path[m];
        const double val = s2 > 0.0
                               ? std::log(s2) + c * static_cast<double>(m) /
                                                    static_cast<double>(n)
                               : std::numeric_limits<double>::infinity();
        fit.criterion_path[m] = val;
        if (val < best_val) {
            best_val = val;
            best = static_cast<int>(m);
        }
    }
    fit.selected = best;
    return best;
}

SpectralCurve ar_spectral_density(const std::vector<double>& coeffs, double sigma2,
                                  const std::vector<double>& omega) {
    // Unit roots count as unstable; the tolerance absorbs eigensolver noise.
    if (companion_spectral_radius(coeffs) >= 1.0 - 1e-12) {
        throw UnstableModel("AR polynomial has a root on or inside the unit circle");
    }
    SpectralCurve curve;
    curve.omega = omega;
    curve.density.resize(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        std::complex<double> denom(1.0, 0.0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            const double ang = kTwoPi * omega[i] * static_cast<double>(k + 1);
            denom -= coeffs[k] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        curve.density[i] = sigma2 / std::norm(denom);
    }
    return curve;
}

std::vector<double> default_omega_grid(std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = 0.5 * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

std::vector<ComponentSpectrum> lp_spectrum(const LpSeries& series, int max_order,
                                           const std::vector<double>& omega) {
    std::vector<ComponentSpectrum> out;
    out.reserve(series.k() + 1);

    auto fit_one = [&](std::string name, const std::vector<double>& x) {
        ComponentSpectrum cs;
        cs.name = std::move(name);
        cs.fit = burg_fit(x, max_order);
        cs.order = select_order(cs.fit, OrderCriterion::bic, x.size());
        cs.flat = cs.order == 0;
        cs.curve = ar_spectral_density(cs.fit.coeffs(cs.order),
                                       cs.fit.sigma2(cs.order), omega);
        out.push_back(std::move(cs));
    };

    fit_one("Z", series.z);
    for (int j = 1; j <= series.k(); ++j) {
        fit_one("YS" + std::to_string(j), series.ys[j - 1]);
    }
    return out;
}

CopulaSpectrum copula_spectral_density(const ScoreBasis& basis,
                                       const std::vector<ComomentMatrix>& per_lag,
                                       double u, double v,
                                       const std::vector<double>& omega) {
    if (!(u > 0.0 && u < 1.0) || !(v > 0.0 && v < 1.0)) {
        throw InvalidProbability("copula spectrum arguments must lie in (0,1)");
    }
    const std::size_t cu = basis.dist.cell_of_probability(u);
    const std::size_t cv = basis.dist.cell_of_probability(v);

    CopulaSpectrum spec;
    spec.curve.omega = omega;
    spec.curve.density.assign(omega.size(), 1.0);
    std::vector<double> imag(omega.size(), 0.0);

    for (const ComomentMatrix& mat : per_lag) {
        const auto& c = mat.effective();
        double fwd = 0.0, rev = 0.0; // cop(u,v;h) - 1 and cop(v,u;h) - 1
        for (int j = 0; j < mat.rows; ++j) {
            for (int m = 0; m < mat.cols; ++m) {
                const double e = c[static_cast<std::size_t>(j) * mat.cols + m];
                if (e == 0.0) continue;
                fwd += e * basis.value[j][cu] * basis.value[m][cv];
                rev += e * basis.value[j][cv] * basis.value[m][cu];
            }
        }
        for (std::size_t i = 0; i < omega.size(); ++i) {
            const double ang = kTwoPi * static_cast<double>(mat.lag) * omega[i];
            spec.curve.density[i] += (fwd + rev) * std::cos(ang);
            imag[i] += (rev - fwd) * std::sin(ang);
        }
    }
    for (double x : imag) spec.max_imag = std::max(spec.max_imag, std::abs(x));
    return spec;
}

} // namespace lptime
