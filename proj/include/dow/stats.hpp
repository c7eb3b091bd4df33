#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "dow/errors.hpp"

namespace dow {

inline double vec_sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

/// Total-variation distance between two histograms/distributions (each is
/// normalized internally).
inline double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw ConfigError("total_variation: size mismatch");
    const double sp = vec_sum(p), sq = vec_sum(q);
    if (!(sp > 0.0) || !(sq > 0.0)) throw ConfigError("total_variation: empty input");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] / sp - q[i] / sq);
    return 0.5 * d;
}

/// Chi-square goodness of fit of observed counts against expected
/// probabilities. Cells are pooled left-to-right until each pool's expected
/// count reaches 5; dof = pools - 1. Returns {chi2, p-value}.
inline std::pair<double, double> chi_square_gof(std::span<const double> observed,
                                                std::span<const double> expected_probs) {
    if (observed.size() != expected_probs.size())
        throw ConfigError("chi_square_gof: size mismatch");
    const double n = vec_sum(observed);
    if (!(n > 0.0)) throw ConfigError("chi_square_gof: no observations");
    const double ptot = vec_sum(expected_probs);

    std::vector<double> obs_pooled, exp_pooled;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += observed[i];
        e_acc += n * expected_probs[i] / ptot;
        if (e_acc >= 5.0) {
            obs_pooled.push_back(o_acc);
            exp_pooled.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (!exp_pooled.empty()) {
            obs_pooled.back() += o_acc;
            exp_pooled.back() += e_acc;
        } else {
            obs_pooled.push_back(o_acc);
            exp_pooled.push_back(e_acc);
        }
    }
    if (obs_pooled.size() < 2)
        throw ConfigError("chi_square_gof: fewer than two pooled cells");

    double chi2 = 0.0;
    for (std::size_t i = 0; i < obs_pooled.size(); ++i) {
        const double d = obs_pooled[i] - exp_pooled[i];
        chi2 += d * d / exp_pooled[i];
    }
    const double dof = static_cast<double>(obs_pooled.size() - 1);
    boost::math::chi_squared dist(dof);
    const double p = boost::math::cdf(boost::math::complement(dist, chi2));
    return {chi2, p};
}

/// 3-point moving average; edge bins average over the in-range neighbors.
inline std::vector<double> moving_average3(std::span<const double> v) {
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        double s = v[i];
        double c = 1.0;
        if (i > 0) { s += v[i - 1]; c += 1.0; }
        if (i + 1 < v.size()) { s += v[i + 1]; c += 1.0; }
        out[i] = s / c;
    }
    return out;
}

inline double mean_of(std::span<const double> v) {
    if (v.empty()) throw EmptyInput("mean_of: empty input");
    return vec_sum(v) / static_cast<double>(v.size());
}

inline double stddev_of(std::span<const double> v) {
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

/// Pearson correlation coefficient of paired samples.
inline double correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw ConfigError("correlation: need equal, nonempty inputs");
    const double ma = mean_of(a), mb = mean_of(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace dow
