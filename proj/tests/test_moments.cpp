#include <doctest.h>

#include <cmath>

#include "lptime/moments.hpp"
#include "support/oracles.hpp"
#include "support/sim.hpp"

using namespace lptime;

TEST_SUITE_BEGIN("moments");

TEST_CASE("analytic first normal moment") {
    CHECK(lp_moment_normal_first() ==
          doctest::Approx(std::sqrt(3.0 / M_PI)).epsilon(1e-15));
    CHECK(lp_moment_normal_first() == doctest::Approx(0.977205).epsilon(1e-5));
    // Matches the reference-table entry to three decimals.
    CHECK(std::abs(lp_moment_normal_first() - 0.977) < 5e-4);
}

TEST_CASE("reference table values recovered by Monte Carlo") {
    // Tighter variants of these live in the acceptance suite at T = 1e6.
    Rng rng(101);
    const std::size_t t = 100000;
    const double tol = 0.02;

    auto first4 = [](const LpMomentVector& m) {
        return std::array<double, 4>{m.values[0], m.values[1], m.values[2], m.values[3]};
    };

    const auto mu = lp_moments(SeriesSample(sim::uniform(t, rng)), 4);
    const std::array<double, 4> uni{1.0, 0.0, 0.0, 0.0};
    const auto mn = lp_moments(SeriesSample(sim::gaussian(t, rng)), 4);
    const std::array<double, 4> nor{0.977, 0.0, 0.184, 0.0};
    const auto me = lp_moments(SeriesSample(sim::exponential(t, rng)), 4);
    const std::array<double, 4> expo{0.866, 0.373, 0.220, 0.150};
    for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(first4(mu)[j] - uni[j]) < tol);
        CHECK(std::abs(first4(mn)[j] - nor[j]) < tol);
        CHECK(std::abs(first4(me)[j] - expo[j]) < tol);
    }
}

TEST_CASE("tail index") {
    Rng rng(103);
    const auto mn = lp_moments(SeriesSample(sim::gaussian(100000, rng)), 6);
    CHECK(lp_tail_index(mn).index == 1); // 0.977^2 > .95
    const auto mu = lp_moments(SeriesSample(sim::uniform(100000, rng)), 6);
    CHECK(lp_tail_index(mu).index == 1);

    LpMomentVector hand;
    hand.values = {0.8, 0.6};
    hand.cumsq = {0.64, 1.0};
    hand.k_used = 2;
    CHECK(lp_tail_index(hand).index == 2);
    CHECK_FALSE(lp_tail_index(hand).saturated);

    // Never crossing the threshold saturates instead of failing.
    LpMomentVector low;
    low.values = {0.5, 0.5};
    low.cumsq = {0.25, 0.5};
    low.k_used = 2;
    const TailIndex t = lp_tail_index(low);
    CHECK(t.index == 2);
    CHECK(t.saturated);

    // Monotone nonincreasing in the threshold.
    CHECK(lp_tail_index(hand, 0.5).index <= lp_tail_index(hand, 0.95).index);
}

TEST_CASE("variance decomposition completes with a full basis") {
    Rng rng(107);
    std::vector<double> vals(400);
    for (double& v : vals) v = static_cast<double>(rng.index(6));
    const SeriesSample s(vals);
    const auto dist = mid_distribution(s);
    const auto m = lp_moments(s, static_cast<int>(dist.size()) - 1);
    CHECK(m.cumsq.back() == doctest::Approx(1.0).epsilon(1e-6));
    // Partial sums never exceed 1.
    for (double c : m.cumsq) CHECK(c <= 1.0 + 1e-8);
}

TEST_CASE("moments invariant under increasing affine maps") {
    Rng rng(109);
    const auto x = sim::exponential(5000, rng);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2.5 * x[i] + 7.0;
    const auto mx = lp_moments(SeriesSample(x), 4);
    const auto my = lp_moments(SeriesSample(y), 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(mx.values[j] == doctest::Approx(my.values[j]).epsilon(1e-10));
    }
}

TEST_CASE("quantile reconstruction") {
    Rng rng(113);
    const auto x = sim::uniform(10000, rng);
    const SeriesSample s(x);
    const auto series = lp_transform(s, 4);
    const auto m = lp_moments(series);

    // Uniform data: LP = (1,0,0,0), so the k=1 partial sum is Leg_1.
    LpMomentVector first;
    first.values = {m.values[0]};
    first.cumsq = {m.values[0] * m.values[0]};
    first.k_used = 1;
    for (double u : {0.05, 0.3, 0.5, 0.7, 0.95}) {
        CHECK(std::abs(quantile_reconstruction(first, series.basis, u) -
                       std::sqrt(12.0) * (u - 0.5)) < 0.05);
    }

    // Zero mean and Parseval under the exact cell measure.
    const auto& dist = series.basis.dist;
    const double mean = oracle::cell_integral1(dist, 1.0, [&](double u) {
        return quantile_reconstruction(m, series.basis, u);
    });
    CHECK(std::abs(mean) < 1e-8);
    const double second = oracle::cell_integral1(dist, 1.0, [&](double u) {
        const double q = quantile_reconstruction(m, series.basis, u);
        return q * q;
    });
    CHECK(second == doctest::Approx(m.cumsq.back()).epsilon(1e-8));
    CHECK_THROWS_AS(quantile_reconstruction(m, series.basis, 0.0), InvalidProbability);
}

TEST_CASE("nearest reference distribution") {
    Rng rng(127);
    const auto me = lp_moments(SeriesSample(sim::exponential(100000, rng)), 4);
    CHECK(nearest_reference(me).name == "Exp(1)");
    const auto mt = lp_moments(SeriesSample(sim::student_t4(100000, rng)), 4);
    CHECK(nearest_reference(mt).name == "t(df=4)");
}

TEST_SUITE_END();
