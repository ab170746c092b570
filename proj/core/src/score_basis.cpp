#include "lptime/score_basis.hpp"

#include <algorithm>
#include <cmath>

namespace lptime {

namespace {

double weighted_dot(const std::vector<double>& mass, const std::vector<double>& f,
                    const std::vector<double>& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) s += mass[i] * f[i] * g[i];
    return s;
}

double weighted_mean(const std::vector<double>& mass, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) s += mass[i] * f[i];
    return s;
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// y += a * x on polynomial coefficient vectors of possibly different length.
void poly_axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    if (y.size() < x.size()) y.resize(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

} // namespace

ScoreBasis build_score_basis(const MidDistribution& dist, int k) {
    if (k < 1) throw InvalidArgument("score count k must be >= 1");
    const std::size_t d = dist.size();

    ScoreBasis b;
    b.dist = dist;
    b.requested_k = k;

    const int k_support = static_cast<int>(d) - 1;
    int k_eff = std::min(k, k_support);
    if (k_eff < k) b.capped = true;

    // T_1 = (midrank - 1/2) / sd(midrank); E[midrank] = 1/2 identically.
    double var1 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double c = dist.middist[i] - 0.5;
        var1 += dist.mass[i] * c * c;
    }
    const double sd1 = std::sqrt(var1);
    if (!(sd1 > 0.0)) throw DegenerateDistribution("mid-rank spread is zero");

    std::vector<double> t1(d);
    for (std::size_t i = 0; i < d; ++i) t1[i] = (dist.middist[i] - 0.5) / sd1;
    b.value.push_back(t1);
    b.poly.push_back({0.0, 1.0});

    // Higher orders: orthogonalize T_1 * T_{j-1} against 1 and all previous
    // scores (modified Gram-Schmidt, one re-orthogonalization pass). The
    // candidate spans the same nested polynomial spaces as raw powers of T_1
    // but keeps the pivot well scaled at high order.
    for (int j = 2; j <= k_eff; ++j) {
        std::vector<double> w(d);
        const auto& prev = b.value[j - 2];
        for (std::size_t i = 0; i < d; ++i) w[i] = t1[i] * prev[i];

        std::vector<double> coeff(b.poly[j - 2].size() + 1, 0.0);
        for (std::size_t l = 0; l < b.poly[j - 2].size(); ++l) {
            coeff[l + 1] = b.poly[j - 2][l];
        }

        const double before = std::sqrt(weighted_dot(dist.mass, w, w));
        for (int pass = 0; pass < 2; ++pass) {
            const double c0 = weighted_mean(dist.mass, w);
            for (double& x : w) x -= c0;
            if (!coeff.empty()) coeff[0] -= c0;
            for (int l = 0; l < j - 1; ++l) {
                const double c = weighted_dot(dist.mass, w, b.value[l]);
                axpy(w, -c, b.value[l]);
                poly_axpy(coeff, -c, b.poly[l]);
            }
        }
        const double after = std::sqrt(weighted_dot(dist.mass, w, w));
        if (!(after > 1e-12 * std::max(before, 1.0))) {
            b.capped = true;
            k_eff = j - 1;
            break;
        }
        for (double& x : w) x /= after;
        for (double& c : coeff) c /= after;
        b.value.push_back(std::move(w));
        b.poly.push_back(std::move(coeff));
    }

    b.k = static_cast<int>(b.value.size());
    b.prefix.assign(b.value.size(), std::vector<double>(d));
    for (std::size_t j = 0; j < b.value.size(); ++j) {
        double run = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            run += dist.mass[i] * b.value[j][i];
            b.prefix[j][i] = run;
        }
    }
    return b;
}

double ScoreBasis::eval(int j, double u) const {
    if (j < 1 || j > k) throw InvalidArgument("score index out of range");
    if (!(u > 0.0 && u < 1.0)) throw InvalidProbability("score argument must lie in (0,1)");
    return value[j - 1][dist.cell_of_probability(u)];
}

double ScoreBasis::integral(int j, double u) const {
    if (j < 1 || j > k) throw InvalidArgument("score index out of range");
    if (!(u > 0.0 && u < 1.0)) throw InvalidProbability("score argument must lie in (0,1)");
    const std::size_t cell = dist.cell_of_probability(u);
    const double left = cell == 0 ? 0.0 : dist.cdf[cell - 1];
    const double full = cell == 0 ? 0.0 : prefix[j - 1][cell - 1];
    return full + (u - left) * value[j - 1][cell];
}

double legendre_score(int j, double u) {
    if (j < 0) throw InvalidArgument("legendre order must be >= 0");
    // Orthonormal on (0,1): sqrt(2j+1) * P_j(2u - 1).
    const double x = 2.0 * u - 1.0;
    double pm1 = 1.0, p = x;
    if (j == 0) return 1.0;
    for (int n = 1; n < j; ++n) {
        const double pn1 = ((2.0 * n + 1.0) * x * p - n * pm1) / (n + 1.0);
        pm1 = p;
        p = pn1;
    }
    return std::sqrt(2.0 * j + 1.0) * p;
}

double eval_score(const ScoreBasis& basis, int j, double u) {
    return basis.eval(j, u);
}

ScoreBasis time_index_scores(std::size_t t_len, int k) {
    if (t_len < 2) throw InvalidArgument("time index needs length >= 2");
    if (k < 1) throw InvalidArgument("score count k must be >= 1");

    ScoreBasis b;
    b.requested_k = k;
    b.k = k;

    const double t = static_cast<double>(t_len);
    MidDistribution d;
    d.distinct.resize(t_len);
    d.mass.assign(t_len, 1.0 / t);
    d.cdf.resize(t_len);
    d.middist.resize(t_len);
    for (std::size_t i = 0; i < t_len; ++i) {
        d.distinct[i] = static_cast<double>(i + 1);
        d.cdf[i] = static_cast<double>(i + 1) / t;
        d.middist[i] = (static_cast<double>(i) + 0.5) / t;
    }
    d.cdf.back() = 1.0;
    b.dist = std::move(d);

    b.value.assign(k, std::vector<double>(t_len));
    for (int j = 1; j <= k; ++j) {
        for (std::size_t i = 0; i < t_len; ++i) {
            b.value[j - 1][i] = legendre_score(j, b.dist.middist[i]);
        }
    }
    b.prefix.assign(k, std::vector<double>(t_len));
    for (int j = 0; j < k; ++j) {
        double run = 0.0;
        for (std::size_t i = 0; i < t_len; ++i) {
            run += b.dist.mass[i] * b.value[j][i];
            b.prefix[j][i] = run;
        }
    }
    return b;
}

LpSeries lp_transform(const SeriesSample& sample, int k) {
    LpSeries s;
    s.basis = build_score_basis(mid_distribution(sample), k);
    s.length = sample.size();
    s.z = normalize(sample);

    std::vector<std::size_t> cell(sample.size());
    for (std::size_t t = 0; t < sample.size(); ++t) {
        cell[t] = s.basis.dist.cell_of_value(sample[t]);
    }
    s.ys.assign(s.basis.k, std::vector<double>(sample.size()));
    for (int j = 0; j < s.basis.k; ++j) {
        const auto& row = s.basis.value[j];
        for (std::size_t t = 0; t < sample.size(); ++t) {
            s.ys[j][t] = row[cell[t]];
        }
    }
    return s;
}

} // namespace lptime
