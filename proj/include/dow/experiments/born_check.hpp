#pragma once

#include <cstddef>
#include <vector>

#include "dow/collapse.hpp"
#include "dow/errors.hpp"
#include "dow/rng.hpp"
#include "dow/stats.hpp"

namespace dow {

struct BornConvergenceResult {
    double tv_distance = 0.0;
    double chi2 = 0.0;
    double chi2_pvalue = 0.0;
    std::vector<double> observed;  // counts per cell
    std::vector<double> expected;  // probability per cell
};

/// Draw n collapse locations and compare the empirical cell histogram with
/// the exact |psi|^2 dV distribution: total-variation distance plus a
/// chi-square goodness-of-fit p-value.
inline BornConvergenceResult born_convergence(const Wavefield& psi, std::size_t n,
                                              SeededRng& rng) {
    if (n < 1000) throw ConfigError("born_convergence: need at least 1e3 draws");
    const BornSampler sampler(psi);
    BornConvergenceResult res;
    res.observed.assign(psi.amps.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) res.observed[sampler.sample_cell(rng)] += 1.0;

    res.expected.resize(psi.amps.size());
    double total = 0.0;
    for (std::size_t i = 0; i < psi.amps.size(); ++i) {
        res.expected[i] = std::norm(psi.amps[i]);
        total += res.expected[i];
    }
    for (double& p : res.expected) p /= total;

    res.tv_distance = total_variation(res.observed, res.expected);
    const auto [chi2, p] = chi_square_gof(res.observed, res.expected);
    res.chi2 = chi2;
    res.chi2_pvalue = p;
    return res;
}

}  // namespace dow
