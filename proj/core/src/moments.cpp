#include "lptime/moments.hpp"

#include <cmath>
#include <limits>

namespace lptime {

LpMomentVector lp_moments(const LpSeries& series) {
    LpMomentVector m;
    m.k_used = series.k();
    m.capped = series.basis.capped;
    m.values.resize(m.k_used);
    m.cumsq.resize(m.k_used);
    const double t = static_cast<double>(series.length);
    double run = 0.0;
    for (int j = 0; j < m.k_used; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < series.length; ++i) {
            s += series.z[i] * series.ys[j][i];
        }
        m.values[j] = s / t;
        run += m.values[j] * m.values[j];
        m.cumsq[j] = run;
    }
    return m;
}

LpMomentVector lp_moments(const SeriesSample& sample, int k_moments) {
    return lp_moments(lp_transform(sample, k_moments));
}

double lp_moment_normal_first() {
    return std::sqrt(3.0 / 3.14159265358979323846);
}

TailIndex lp_tail_index(const LpMomentVector& moments, double threshold) {
    TailIndex t;
    for (int j = 0; j < moments.k_used; ++j) {
        if (moments.cumsq[j] > threshold) {
            t.index = j + 1;
            return t;
        }
    }
    t.index = moments.k_used;
    t.saturated = true;
    return t;
}

double quantile_reconstruction(const LpMomentVector& moments, const ScoreBasis& basis,
                               double u) {
    if (moments.k_used > basis.k) {
        throw DimensionMismatch("moment vector longer than score basis");
    }
    double q = 0.0;
    for (int j = 1; j <= moments.k_used; ++j) {
        q += moments.values[j - 1] * basis.eval(j, u);
    }
    return q;
}

const std::vector<ReferenceDistribution>& reference_lp_table() {
    static const std::vector<ReferenceDistribution> table = {
        {"Uniform[0,1]", {1.0, 0.0, 0.0, 0.0}},
        {"N(0,1)", {0.977, 0.0, 0.184, 0.0}},
        {"Exp(1)", {0.866, 0.373, 0.220, 0.150}},
        {"t(df=2)", {0.454, 0.0, 0.260, 0.0}},
        {"t(df=4)", {0.902, 0.0, 0.299, 0.0}},
    };
    return table;
}

const ReferenceDistribution& nearest_reference(const LpMomentVector& moments) {
    const auto& table = reference_lp_table();
    const int dims = std::min(moments.k_used, 4);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        double d2 = 0.0;
        for (int j = 0; j < dims; ++j) {
            const double diff = moments.values[j] - table[i].lp[j];
            d2 += diff * diff;
        }
        if (d2 < best) {
            best = d2;
            best_i = i;
        }
    }
    return table[best_i];
}

} // namespace lptime
