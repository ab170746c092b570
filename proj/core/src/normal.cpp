#include "lptime/normal.hpp"

#include <algorithm>
#include <cmath>

#include "lptime/errors.hpp"

namespace lptime {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Acklam's rational initializer for the inverse normal CDF (~1e-9), then
// Halley steps take it to machine precision.
double acklam(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double q, r;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

struct BvnIntegrand {
    double h, k;

    // exp of -(h^2 - 2 h k sin(th) + k^2) / (2 cos^2(th)), written with
    // half-angle forms of 1 -+ sin(th) so both endpoint limits stay stable.
    double operator()(double th) const {
        const double sm = std::sin(kPi / 4.0 - th / 2.0);
        const double cm = std::cos(kPi / 4.0 - th / 2.0);
        const double one_minus = 2.0 * sm * sm; // 1 - sin(th)
        const double one_plus = 2.0 * cm * cm;  // 1 + sin(th)
        double expo;
        if (std::sin(th) >= 0.0) {
            const double dm = h - k;
            expo = -(dm * dm / one_minus + 2.0 * h * k) / (2.0 * one_plus);
        } else {
            const double dp = h + k;
            expo = -(dp * dp / one_plus - 2.0 * h * k) / (2.0 * one_minus);
        }
        return expo < -745.0 ? 0.0 : std::exp(expo);
    }
};

double simpson(const BvnIntegrand& f, double a, double fa, double b, double fb,
               double fm, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(f, a, fa, m, fm, flm, left, eps / 2.0, depth - 1) +
           simpson(f, m, fm, b, fb, frm, right, eps / 2.0, depth - 1);
}

double integrate(const BvnIntegrand& f, double a, double b, double eps) {
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, fa, b, fb, fm, whole, eps, 40);
}

} // namespace

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw InvalidProbability("normal quantile level must lie in (0,1)");
    }
    double x = acklam(u);
    for (int i = 0; i < 2; ++i) {
        const double e = normal_cdf(x) - u;
        const double d = normal_pdf(x);
        if (d <= 0.0) break;
        const double step = e / d;
        x -= step / (1.0 + 0.5 * x * step); // Halley
    }
    return x;
}

double bivariate_normal_cdf(double h, double k, double rho) {
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw InvalidArgument("correlation must lie in [-1,1]");
    }
    if (rho >= 1.0 - 1e-15) return normal_cdf(std::min(h, k));
    if (rho <= -1.0 + 1e-15) {
        return std::max(0.0, normal_cdf(h) + normal_cdf(k) - 1.0);
    }
    const double base = normal_cdf(h) * normal_cdf(k);
    if (rho == 0.0) return base;
    const double asr = std::asin(rho);
    BvnIntegrand f{h, k};
    const double integral =
        asr > 0.0 ? integrate(f, 0.0, asr, 1e-13) : -integrate(f, asr, 0.0, 1e-13);
    double p = base + integral / (2.0 * kPi);
    return std::clamp(p, 0.0, 1.0);
}

} // namespace lptime
