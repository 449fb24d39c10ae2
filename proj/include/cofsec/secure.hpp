#ifndef COFSEC_SECURE_HPP
#define COFSEC_SECURE_HPP

#include <string>
#include <vector>

#include "cofsec/cof.hpp"

namespace cofsec {

/// Per-message secure-rate lower bounds.
///
/// R[l] = max(0, R_intended[l] - max_{k != l} leakage[l][k]); the asymptotic
/// slack term is recorded for reporting but never added to the achievable
/// rates, since it only vanishes with block length.
struct SecureRateReport {
    std::vector<double> R;
    std::vector<double> R_intended;
    std::vector<std::vector<double>> leakage;  // leakage[l][k], diagonal unused (0)
    double sumRate = 0.0;
    double epsilonSlack = 0.0;

    std::string to_json() const;
};

/// One point of the degrees-of-freedom sweep.
struct SweepPoint {
    double P = 0.0;
    bool feasible = false;
    std::vector<double> R;
    double sumRate = 0.0;
    double benchmark = 0.0;  // (1/2) log2(1+P)
    double ratio = 0.0;      // sumRate / benchmark
};

/// Sum-rate sweep against the (1/2) log2(1+P) benchmark with a least-squares
/// slope over the top half of the grid (infeasible points dropped).
struct SdofSweep {
    std::vector<SweepPoint> points;
    double slope = 0.0;

    std::string to_json() const;
    std::string to_csv() const;  // P, R_1..R_K, sumRate, halfLog2_1pP, ratio
};

/// Worst-case information leaked about message l to eavesdropper k, in bits:
///   (1/2) log2( sum_m (h_k^2 Pm[l][m] + G[l][k]^2 PJ[l][m])
///               / (G[l][k]^2 PJ[l][mPrime[l]]) ).
/// Strictly positive for feasible allocations (the numerator dominates the
/// weakest jamming component). Invariant under jointly rescaling row l of Pm
/// and PJ. Indices 0-based; throws std::invalid_argument when k == l.
double leakage_term(const ChannelConfig& config, const PowerAllocation& alloc, int l, int k);

/// Reliable-rate floor for the receiver's own codeword:
/// max(0, (1/2) log2(P_eff[own] / max_k sigma2[k])). Uses the largest
/// effective noise variance, so it does not depend on the decode order.
double intended_rate(const CofSolution& sol, int receiver_l);

/// Assembles intended rates (via the compute-and-forward engine), the
/// leakage matrix, and the clipped secure rates.
SecureRateReport theorem1_report(const ChannelConfig& config, const PowerAllocation& alloc);

/// Log-spaced grid of nPoints powers covering [pMin, pMax].
std::vector<double> log_grid(double pMin, double pMax, int nPoints);

/// Runs theorem1_report across the power grid with the default allocation
/// recomputed at each P (constant message shares). Infeasible points are
/// kept in the series, flagged, and excluded from the slope fit, which uses
/// the top half of the grid.
SdofSweep sdof_sweep(const ChannelConfig& configTemplate, const BeamParams& params, double delta,
                     const std::vector<double>& Pgrid);

}  // namespace cofsec

#endif
