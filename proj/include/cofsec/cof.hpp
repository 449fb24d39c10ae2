#ifndef COFSEC_COF_HPP
#define COFSEC_COF_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cofsec/channel.hpp"
#include "cofsec/common.hpp"
#include "cofsec/power.hpp"

namespace cofsec {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// The K-user multiple-access channel a receiver sees once each unintended
/// message has merged with its jamming partner and the receiver's own
/// helper's (sub-noise) jamming has been absorbed into a unit-variance noise.
///
/// With denom = sqrt(G[l][l]^2 * PJ_l + 1):
///   h_eff[l] = h[l]/denom,  h_eff[j] = 1/denom          (j != l)
///   P_eff[l] = sum_m Pm[l][m]
///   P_eff[j] = h[l]^2 * sum_m Pm[j][m] + G[j][l]^2 * sum_m PJ[j][m]
///   b_eff[j] = sqrt(P_eff[j]/P)
struct EffectiveMac {
    int receiver = 0;
    Eigen::VectorXd h_eff;
    Eigen::VectorXd P_eff;
    Eigen::VectorXd b_eff;
};

/// Decoding solution at one receiver: integer combination coefficients,
/// effective noise variances along the successive chain, and the
/// combination rates.
struct CofSolution {
    int receiver = 0;
    IntMatrix A;                         // rows are the combination coefficients
    double beta1 = 0.0;                  // MMSE scaling of the first combination
    std::vector<double> sigma2;          // effective noise variance per step
    std::vector<int> decodeOrder;        // step k resolves codeword decodeOrder[k]
    std::vector<double> R_comb;          // bits per real channel use
    std::vector<double> P_eff;           // copied from the MAC for reporting
};

/// Recursion diagnostics: spectrum floor and trace of the conditional
/// covariance before each step.
struct ConditioningDiagnostics {
    std::vector<double> minEigenvalues;
    std::vector<double> traces;
};

inline constexpr double kRateCapBits = 60.0;  // cap for degenerate sigma^2 -> 0

/// Builds receiver l's effective MAC (0-based l). Throws InfeasibleError when
/// the allocation violates its feasibility constraints, since the sub-noise
/// normalization is only meaningful for feasible allocations.
EffectiveMac build_effective_mac(const ChannelConfig& config, const PowerAllocation& alloc,
                                 int receiver_l);

/// Error covariance of the streams given the channel output:
/// Q = D - (D h)(D h)^T / (1 + h^T D h) with D = diag(P_eff), h = h_eff.
/// a^T Q a is the minimal effective-noise variance of combination a.
Eigen::MatrixXd gram_matrix(const EffectiveMac& mac);

/// Closed-form MMSE scaling and effective noise variance for one integer
/// combination:
///   beta   = (sum a_j h_j P_j) / (1 + sum h_j^2 P_j)
///   sigma2 = sum a_j^2 P_j - beta * (sum a_j h_j P_j)   (= a^T Q a, >= 0)
/// Throws std::invalid_argument for the zero vector.
struct MmseResult {
    double sigma2;
    double beta;
};
MmseResult mmse_sigma2(const EffectiveMac& mac, const IntVector& a);

/// LLL-reduced basis of Z^K under the inner product <a,b> = a^T Q b
/// (delta = 0.75), rows sorted by a^T Q a ascending. The result is
/// unimodular, hence linearly independent. If the Gram turns numerically
/// singular the reduction falls back to the diagonal-only form diag(P_eff).
IntMatrix select_coefficients(const EffectiveMac& mac);

/// Decodes the K combinations in row order, conditioning on each exactly
/// decoded combination via a rank-one Schur update of Q. Step k resolves the
/// not-yet-decoded codeword with the largest P_eff among the combination's
/// participants (ties: smallest index). Throws ComputationError for
/// rank-deficient A or when a combination touches only decoded codewords.
CofSolution successive_rates(const EffectiveMac& mac, const IntMatrix& A);

/// Min eigenvalue / trace of each conditional covariance in the recursion.
ConditioningDiagnostics conditioning_diagnostics(const EffectiveMac& mac, const IntMatrix& A);

/// build_effective_mac -> select_coefficients -> successive_rates.
CofSolution receiver_solution(const ChannelConfig& config, const PowerAllocation& alloc,
                              int receiver_l);

/// Exact integer determinant (fraction-free elimination, 128-bit
/// intermediates); used to confirm unimodularity.
std::int64_t det_integer(const IntMatrix& A);

std::string to_json(const CofSolution& sol);

}  // namespace cofsec

#endif
