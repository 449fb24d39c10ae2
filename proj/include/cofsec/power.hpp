#ifndef COFSEC_POWER_HPP
#define COFSEC_POWER_HPP

#include <functional>
#include <string>
#include <vector>

#include "cofsec/beamforming.hpp"
#include "cofsec/channel.hpp"
#include "cofsec/common.hpp"

namespace cofsec {

/// Per-component power allocation.
///
/// Pm[l][m]  power of the m-th component of message l
/// PJ[l][m]  power of the m-th component of helper l's jamming signal
/// mPrime[l] index of helper l's weakest jamming component (first minimum)
///
/// Feasibility (see check_allocation):
///   sub-noise jamming   G[l][l]^2 * sum_m PJ[l][m] < 1
///   jamming dominated   PJ[l][m1] < Pm[l][m2] for all m1, m2
///   budgets             sum Pm <= P and sum PJ <= P
///   positivity          all powers > 0
struct PowerAllocation {
    std::int64_t M = 0;
    std::vector<std::vector<double>> Pm;   // K x M
    std::vector<std::vector<double>> PJ;   // K x M
    std::vector<std::int64_t> mPrime;      // K
    // Lattice second moments sigma2[l][m] = Pm[l][m] / f(m,l)^2, recorded for
    // reference; nothing downstream consumes them.
    std::vector<std::vector<double>> sigma2Lattice;

    void recompute_m_prime();
    /// Joint rescaling of every component power by c > 0. Leakage ratios are
    /// invariant under this map; it realizes the constant-share family used
    /// by the degrees-of-freedom analysis.
    PowerAllocation scaled(double c) const;

    std::string to_json() const;
    static PowerAllocation from_json(const std::string& text);
};

/// Equal-split allocation: PJ[l][m] = (1-delta)/(M*G[l][l]^2) saturating the
/// sub-noise constraint at 1-delta, Pm[l][m] = P/(K*M); jamming is uniformly
/// rescaled down if its total exceeds the helper budget P. Throws
/// InfeasibleError when the budget cannot dominate the jamming components.
PowerAllocation default_allocation(const ChannelConfig& config, const BeamParams& params,
                                   double delta = 0.1);

/// Lists every violated feasibility constraint with indices. Strict
/// inequalities are checked with absolute slack 1e-12.
ValidationResult check_allocation(const PowerAllocation& alloc, const ChannelConfig& config);

using RateObjective = std::function<double(const PowerAllocation&)>;

/// Declared finite search grid: delta values crossed with per-message power
/// shares from the integer simplex {s : sum s = shareSteps} / shareSteps.
struct GridSpec {
    std::vector<double> deltas = {0.05, 0.1, 0.2, 0.4};
    int shareSteps = 4;

    std::string to_json() const;
    static GridSpec from_json(const std::string& text);
};

/// Best feasible allocation over the grid under the objective; deterministic
/// first-found tie-break. Throws InfeasibleError when no grid point is
/// feasible.
PowerAllocation grid_search(const ChannelConfig& config, const BeamParams& params,
                            const RateObjective& objective, const GridSpec& grid = {});

}  // namespace cofsec

#endif
