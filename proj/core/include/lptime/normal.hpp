#pragma once

namespace lptime {

double normal_pdf(double x);
double normal_cdf(double x);

/// Inverse standard normal CDF, refined to full double precision.
double normal_quantile(double u);

/// P(X <= h, Y <= k) for a standard bivariate normal with correlation rho.
/// Single-integral form evaluated adaptively; absolute error well below 1e-10.
double bivariate_normal_cdf(double h, double k, double rho);

} // namespace lptime
