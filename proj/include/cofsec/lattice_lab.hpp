#ifndef COFSEC_LATTICE_LAB_HPP
#define COFSEC_LATTICE_LAB_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cofsec/common.hpp"

namespace cofsec {

/// Scalar nested lattice pair: coarse lattice q_c * Z inside fine lattice
/// q_f * Z, with q_c / q_f an integer >= 2. The representative cell is the
/// half-open interval [0, q_c).
struct LatticeChain1D {
    double q_c = 0.0;
    double q_f = 0.0;

    /// Fine points per coarse cell.
    std::int64_t nesting_ratio() const;

    /// Throws std::invalid_argument unless q_c/q_f is an integer >= 2.
    static LatticeChain1D make(double q_c, double q_f);
};

/// Reduction into the representative cell: v - q_c * floor(v / q_c).
double mod_reduce(double v, const LatticeChain1D& chain);

/// Nearest coarse-lattice point, ties to the even multiple of q_c.
double quantize(double v, const LatticeChain1D& chain);

struct UniformityTestResult {
    double chi2 = 0.0;
    int dof = 0;
    double pValue = 0.0;
    std::int64_t nSamples = 0;
    std::vector<std::int64_t> counts;
};

/// Chi-square statistic and p-value of observed bin counts against the
/// uniform law.
UniformityTestResult chi_square_uniformity(const std::vector<std::int64_t>& counts);

/// Folds t_fixed + u into the cell for each provided dither u and tests the
/// landing cosets for uniformity; entry point for injecting adversarial
/// dither sequences.
UniformityTestResult crypto_uniformity_from_dithers(const LatticeChain1D& chain, double t_fixed,
                                                    std::span<const double> dithers);

/// Draws dithers uniformly over the fine points inside the cell and checks
/// that [t_fixed + u] mod q_c lands uniformly across the q_c/q_f cosets,
/// regardless of t_fixed. Throws std::invalid_argument for a degenerate
/// chain (q_c == q_f) or t_fixed outside [0, q_c).
UniformityTestResult crypto_uniformity_test(const LatticeChain1D& chain, double t_fixed,
                                            std::int64_t nSamples, std::uint64_t seed);

struct EntropyCheckResult {
    double empiricalEntropy = 0.0;  // bits
    double bound = 0.0;             // analytic bound incl. slack
    std::int64_t cellsHit = 0;
};

/// Simulates the aligned sum of independent uniform dithered components with
/// the given powers, quantizes it by the coarse lattice whose cell second
/// moment is jamCellPower, and compares the plug-in entropy of the
/// quantization index against (1/2) log2(sum powers / jamCellPower) +
/// slackBits. The slack absorbs the 1-D shaping constant.
EntropyCheckResult quantization_entropy_check(const std::vector<double>& powers,
                                              double jamCellPower, std::int64_t nSamples,
                                              std::uint64_t seed, double slackBits = 2.0);

}  // namespace cofsec

#endif
