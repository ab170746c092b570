#include <doctest.h>

#include <cmath>

#include "lptime/comoment.hpp"
#include "support/oracles.hpp"
#include "support/sim.hpp"

using namespace lptime;

namespace {

// Hand-built matrix for feeding bic_smooth and the quadratic form directly.
ComomentMatrix make_matrix(std::vector<double> entries, int rows, int cols,
                           std::size_t n) {
    ComomentMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.n = n;
    m.lag = 1;
    m.raw = std::move(entries);
    m.smooth.assign(m.raw.size(), 0.0);
    m.mask.assign(m.raw.size(), 0);
    return m;
}

// Lag-1 comoment matrix of the published daily-return analysis.
const std::vector<double> kPublishedLag1 = {
    0.0705,  -0.0617, 0.0199, 0.0113,  //
    0.0074,  0.1542,  0.0077, 0.0652,  //
    -0.0104, -0.0071, 0.0262, -0.0355, //
    0.0166,  0.0438,  0.0113, 0.0698,
};

} // namespace

TEST_SUITE_BEGIN("comoment");

TEST_CASE("iid series has no comoment structure") {
    Rng rng(211);
    const auto series = lp_transform(SeriesSample(sim::gaussian(100000, rng)), 4);
    const double band = 4.0 / std::sqrt(100000.0);
    for (int h : {1, 5}) {
        const auto m = lp_comoment_matrix(series, h);
        for (double e : m.raw) CHECK(std::abs(e) < band);
    }
}

TEST_CASE("period-h series gives the identity at its own lag") {
    // Y(t+5) = Y(t) exactly; the overlap window stays balanced when
    // (T - 5) is a multiple of the period.
    std::vector<double> y;
    for (int rep = 0; rep < 101; ++rep) {
        for (double v : {1.0, 3.0, 0.0, 4.0, 2.0}) y.push_back(v);
    }
    const auto series = lp_transform(SeriesSample(y), 4);
    const auto m = lp_comoment_matrix(series, 5);
    for (int j = 0; j < 4; ++j) {
        for (int c = 0; c < 4; ++c) {
            CHECK(m.raw_at(j, c) == doctest::Approx(j == c ? 1.0 : 0.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("entries stay inside the Cauchy-Schwarz envelope") {
    Rng rng(223);
    const auto series = lp_transform(SeriesSample(sim::arch(20000, 0.2, 0.7, rng)), 4);
    const auto m = lp_comoment_matrix(series, 1);
    for (double e : m.raw) CHECK(std::abs(e) <= 1.0 + 1e-8);
}

TEST_CASE("gaussian AR(1) rank autocorrelation matches the analytic value") {
    // E[Leg1(Phi(X_t)) Leg1(Phi(X_{t+1}))] = (6/pi) asin(rho/2) for a
    // Gaussian pair; Monte-Carlo oracle on the exact transform agrees.
    const double rho = 0.6;
    const double analytic = (6.0 / M_PI) * std::asin(rho / 2.0);

    Rng orng(227);
    double mc = 0.0;
    {
        const std::size_t n = 1000000;
        double prev = orng.normal();
        double sum = 0.0;
        auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
        for (std::size_t t = 0; t < n; ++t) {
            const double cur = rho * prev + std::sqrt(1.0 - rho * rho) * orng.normal();
            sum += std::sqrt(12.0) * (phi(prev) - 0.5) * std::sqrt(12.0) * (phi(cur) - 0.5);
            prev = cur;
        }
        mc = sum / static_cast<double>(n);
    }
    CHECK(std::abs(mc - analytic) < 0.01);

    Rng rng(229);
    const auto series = lp_transform(SeriesSample(sim::ar1(100000, rho, rng)), 4);
    const auto m = lp_comoment_matrix(series, 1);
    CHECK(std::abs(m.raw_at(0, 0) - analytic) < 0.02);
}

TEST_CASE("comoments are invariant under strictly increasing transforms") {
    Rng rng(233);
    std::vector<double> y(3000);
    for (double& v : y) v = 1.0 + static_cast<double>(rng.index(9));
    std::vector<double> ey(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) ey[i] = std::exp(y[i]);
    const auto m1 = lp_comoment_matrix(lp_transform(SeriesSample(y), 4), 2);
    const auto m2 = lp_comoment_matrix(lp_transform(SeriesSample(ey), 4), 2);
    for (std::size_t i = 0; i < m1.raw.size(); ++i) {
        CHECK(std::abs(m1.raw[i] - m2.raw[i]) < 1e-10);
    }
}

TEST_CASE("insufficient overlap rejected") {
    const auto series = lp_transform(SeriesSample({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}), 2);
    CHECK_THROWS_AS(lp_comoment_matrix(series, 5), InsufficientOverlap);
    CHECK_THROWS_AS(lp_comoment_matrix(series, 0), InvalidArgument);
}

TEST_CASE("bic smoothing basics") {
    // All-zero matrix keeps nothing.
    auto z = bic_smooth(make_matrix(std::vector<double>(16, 0.0), 4, 4, 10000));
    CHECK(z.selected == 0);
    for (double e : z.smooth) CHECK(e == 0.0);

    // A single unit entry beats the penalty 2 log(1e4)/1e4 = 0.00184.
    std::vector<double> one(16, 0.0);
    one[5] = 1.0;
    auto m = bic_smooth(make_matrix(one, 4, 4, 10000));
    CHECK(m.selected == 1);
    CHECK(m.smooth[5] == 1.0);
    CHECK(m.mask[5] == 1);

    // Idempotent: smoothing the smooth matrix changes nothing.
    const auto again = bic_smooth(m);
    CHECK(again.selected == m.selected);
    CHECK(again.smooth == m.smooth);
    CHECK(again.mask == m.mask);
}

TEST_CASE("bic smoothing reproduces the published starred selection") {
    // With n = 11825 the penalty is 0.001586; exactly the six starred
    // entries of the published lag-1 matrix clear it.
    auto m = bic_smooth(make_matrix(kPublishedLag1, 4, 4, 11825));
    CHECK(m.selected == 6);
    const std::vector<int> starred = {0, 1, 5, 7, 13, 15};
    for (int i = 0; i < 16; ++i) {
        const bool expect = std::find(starred.begin(), starred.end(), i) != starred.end();
        CHECK(static_cast<bool>(m.mask[i]) == expect);
    }
}

TEST_CASE("bic smoothing idempotent on random matrices") {
    Rng rng(239);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> e(16);
        for (double& v : e) v = 0.2 * (rng.uniform01() - 0.5);
        auto m = bic_smooth(make_matrix(e, 4, 4, 50 + rng.index(100000)));
        const auto again = bic_smooth(m);
        CHECK(again.smooth == m.smooth);
        CHECK(again.selected == m.selected);
    }
}

TEST_CASE("pearson decomposition reproduces the published lag-1 value") {
    // Smooth moments and comoments of the published analysis: the quadratic
    // form collapses to one term, .872 * .0705 * .872 = .0536.
    LpMomentVector mom;
    mom.values = {0.872, 0.0, 0.331, 0.0, 0.191};
    mom.k_used = 5;
    std::vector<double> sm(25, 0.0);
    sm[0 * 5 + 0] = 0.0705;
    sm[0 * 5 + 1] = -0.0617;
    sm[1 * 5 + 1] = 0.1542;
    sm[1 * 5 + 3] = 0.0652;
    sm[3 * 5 + 1] = 0.0438;
    sm[3 * 5 + 3] = 0.0698;
    auto m = make_matrix(std::vector<double>(25, 0.0), 5, 5, 11825);
    m.smooth = sm;
    m.smoothed = true;
    const double r = lp_autocorrelation(mom, mom, m, true);
    CHECK(r == doctest::Approx(0.872 * 0.0705 * 0.872).epsilon(1e-12));
    CHECK(std::abs(r - 0.0536) < 1e-4);

    // Zero matrix gives zero.
    const auto zero = make_matrix(std::vector<double>(25, 0.0), 5, 5, 1000);
    CHECK(lp_autocorrelation(mom, mom, zero, false) == 0.0);

    LpMomentVector bad;
    bad.values = {1.0};
    bad.k_used = 1;
    CHECK_THROWS_AS(lp_autocorrelation(bad, mom, m, true), DimensionMismatch);
}

TEST_CASE("pearson decomposition is exact on finite joint pmfs") {
    Rng rng(241);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t dx = 2 + rng.index(4); // up to 5 support points
        const std::size_t dy = 2 + rng.index(4);
        oracle::JointPmf pmf;
        pmf.xs.resize(dx);
        pmf.ys.resize(dy);
        for (std::size_t i = 0; i < dx; ++i) pmf.xs[i] = static_cast<double>(i) + rng.uniform01();
        for (std::size_t l = 0; l < dy; ++l) pmf.ys[l] = static_cast<double>(l) + rng.uniform01();
        pmf.p.resize(dx * dy);
        double tot = 0.0;
        for (double& v : pmf.p) {
            v = 0.05 + rng.uniform01();
            tot += v;
        }
        for (double& v : pmf.p) v /= tot;

        // Marginals and their complete score bases.
        std::vector<double> px(dx, 0.0), py(dy, 0.0);
        for (std::size_t i = 0; i < dx; ++i) {
            for (std::size_t l = 0; l < dy; ++l) {
                px[i] += pmf.at(i, l);
                py[l] += pmf.at(i, l);
            }
        }
        const auto distx = MidDistribution::from_masses(pmf.xs, px);
        const auto disty = MidDistribution::from_masses(pmf.ys, py);
        const auto bx = build_score_basis(distx, static_cast<int>(dx) - 1);
        const auto by = build_score_basis(disty, static_cast<int>(dy) - 1);

        auto standardize = [](const std::vector<double>& vals,
                              const std::vector<double>& mass) {
            double mean = 0.0, var = 0.0;
            for (std::size_t i = 0; i < vals.size(); ++i) mean += mass[i] * vals[i];
            for (std::size_t i = 0; i < vals.size(); ++i) {
                var += mass[i] * (vals[i] - mean) * (vals[i] - mean);
            }
            std::vector<double> z(vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i) {
                z[i] = (vals[i] - mean) / std::sqrt(var);
            }
            return z;
        };
        const auto zx = standardize(pmf.xs, px);
        const auto zy = standardize(pmf.ys, py);

        LpMomentVector momx, momy;
        momx.k_used = bx.k;
        momy.k_used = by.k;
        for (int j = 1; j <= bx.k; ++j) {
            double v = 0.0;
            for (std::size_t i = 0; i < dx; ++i) v += px[i] * zx[i] * bx.value[j - 1][i];
            momx.values.push_back(v);
        }
        for (int j = 1; j <= by.k; ++j) {
            double v = 0.0;
            for (std::size_t l = 0; l < dy; ++l) v += py[l] * zy[l] * by.value[j - 1][l];
            momy.values.push_back(v);
        }

        std::vector<double> entries(static_cast<std::size_t>(bx.k) * by.k, 0.0);
        for (int j = 0; j < bx.k; ++j) {
            for (int c = 0; c < by.k; ++c) {
                double v = 0.0;
                for (std::size_t i = 0; i < dx; ++i) {
                    for (std::size_t l = 0; l < dy; ++l) {
                        v += pmf.at(i, l) * bx.value[j][i] * by.value[c][l];
                    }
                }
                entries[static_cast<std::size_t>(j) * by.k + c] = v;
            }
        }
        const auto mat = make_matrix(entries, bx.k, by.k, 1000);
        const double decomposed = lp_autocorrelation(momx, momy, mat, false);
        CHECK(decomposed == doctest::Approx(oracle::brute_pearson(pmf)).epsilon(1e-8));
    }
}

TEST_CASE("correlogram") {
    Rng rng(251);
    const auto iid = lp_transform(SeriesSample(sim::gaussian(20000, rng)), 4);
    const auto c = lp_correlogram(iid, 20);
    CHECK(c.band == doctest::Approx(1.96 / std::sqrt(20000.0)));
    int outside = 0;
    for (const auto& col : c.acf) {
        for (double v : col) outside += std::abs(v) > c.band;
    }
    CHECK(outside <= 8); // ~5% of 80 expected

    // Column 1 equals the classical ACF of the mid-rank series.
    const auto ranks = mid_rank_series(SeriesSample(sim::gaussian(5000, rng)));
    const auto series2 = lp_transform(SeriesSample(ranks), 2);
    // (ranks are already the mid-ranks of themselves: strictly increasing map)
    const auto c2 = lp_correlogram(series2, 10);
    for (int h = 1; h <= 10; ++h) {
        CHECK(c2.acf[0][h - 1] ==
              doctest::Approx(oracle::classical_acf(ranks, h)).epsilon(1e-10));
    }
}

TEST_CASE("correlogram flags volatility clustering") {
    Rng rng(257);
    const auto series = lp_transform(SeriesSample(sim::arch(40000, 0.2, 0.7, rng)), 4);
    const auto c = lp_correlogram(series, 10);
    int ys1_outside = 0;
    for (double v : c.acf[0]) ys1_outside += std::abs(v) > c.band;
    CHECK(ys1_outside <= 1);
    // Squared-score dependence shows up in the second component.
    for (int h = 1; h <= 3; ++h) CHECK(c.acf[1][h - 1] > c.band);
}

TEST_CASE("correlogram rejects an oversized lag") {
    Rng rng(263);
    const auto series = lp_transform(SeriesSample(sim::gaussian(100, rng)), 2);
    CHECK_THROWS_AS(lp_correlogram(series, 25), InsufficientOverlap);
}

TEST_CASE("nonstationarity comoments") {
    Rng rng(269);
    const std::size_t t = 20000;
    const double band = 4.0 / std::sqrt(static_cast<double>(t));

    // Stationary input: nothing loads on the time scores.
    const auto m0 = nonstationarity_comoment(SeriesSample(sim::gaussian(t, rng)), 4);
    for (double e : m0.raw) CHECK(std::abs(e) < band);
    CHECK(m0.kind == ComomentMatrix::Kind::time_index);

    // Linear trend in the mean loads on (1,1).
    std::vector<double> trend(t);
    for (std::size_t i = 0; i < t; ++i) {
        trend[i] = static_cast<double>(i) / static_cast<double>(t) + rng.normal();
    }
    const auto m1 = nonstationarity_comoment(SeriesSample(trend), 4);
    CHECK(m1.raw_at(0, 0) > 3.0 * band);

    // Variance drift loads on (1,2) while (1,1) stays quiet.
    std::vector<double> vdrift(t);
    for (std::size_t i = 0; i < t; ++i) {
        vdrift[i] = (1.0 + static_cast<double>(i) / static_cast<double>(t)) * rng.normal();
    }
    const auto m2 = nonstationarity_comoment(SeriesSample(vdrift), 4);
    CHECK(m2.raw_at(0, 1) > 3.0 * band);
    CHECK(std::abs(m2.raw_at(0, 0)) < 3.0 * band);
}

TEST_CASE("lpinfor statistic") {
    auto zero = make_matrix(std::vector<double>(16, 0.0), 4, 4, 1000);
    CHECK(lpinfor_stat(zero, false) == 0.0);

    // Sum of squares of the six published starred entries.
    auto m = bic_smooth(make_matrix(kPublishedLag1, 4, 4, 11825));
    CHECK(lpinfor_stat(m, true) == doctest::Approx(0.0435963).epsilon(1e-6));
}

TEST_SUITE_END();
