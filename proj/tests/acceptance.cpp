// Acceptance suite: one check per shipped guarantee, each printed as a
// single PASS/FAIL line with its measured numbers. Exit code is the number
// of failed checks. `--criterion N` runs one check, `--quick` shrinks trial
// counts for smoke runs.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "cofsec/beamforming.hpp"
#include "cofsec/channel.hpp"
#include "cofsec/cof.hpp"
#include "cofsec/lattice_lab.hpp"
#include "cofsec/power.hpp"
#include "cofsec/secure.hpp"
#include "oracles.hpp"

using namespace cofsec;
namespace orc = cofsec::oracles;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max({std::abs(got), std::abs(want), 1e-300});
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

// [1] closed-form MMSE vs dense beta-grid minimization
Outcome criterion_mmse(bool quick) {
    const int trials = quick ? 100 : 1000;
    Rng rng(substream_seed(1, "acceptance.mmse"));
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int K = 2 + static_cast<int>(rng.below(4));
        const auto inst = orc::random_feasible_instance(K, rng, 1e5);
        const EffectiveMac mac = build_effective_mac(inst.config, inst.alloc, inst.receiver);
        const auto a = orc::random_coefficients(K, rng, 8);
        std::vector<double> h(mac.h_eff.data(), mac.h_eff.data() + K);
        std::vector<double> P(mac.P_eff.data(), mac.P_eff.data() + K);
        IntVector av(K);
        for (int j = 0; j < K; ++j) av(j) = a[j];
        const double range = std::max(10.0, orc::beta_range_bound(h, P, a));
        const auto oracle = orc::beta_grid_min_sigma2(h, P, a, range, 1e-4);
        const auto impl = mmse_sigma2(mac, av);
        worst = std::max(worst, rel_err(impl.sigma2, oracle.sigma2));
    }
    return {worst <= 1e-6, fmt("%d trials, max rel err %.2e (tol 1e-6)", trials, worst)};
}

// [2] smallest LLL form vs exhaustive enumeration over ||a||_inf <= 8
Outcome criterion_lll(bool quick) {
    const int trials = quick ? 60 : 500;
    Rng rng(substream_seed(2, "acceptance.lll"));
    int equal = 0;
    double worstFactor = 0.0;
    for (int t = 0; t < trials; ++t) {
        const EffectiveMac mac = orc::random_generic_mac(3, rng);
        const Eigen::MatrixXd Q = gram_matrix(mac);
        const IntMatrix A = select_coefficients(mac);
        const Eigen::VectorXd a0 = A.row(0).transpose().cast<double>();
        const double lll = a0.dot(Q * a0);
        const auto box = orc::enumerate_min_quadratic_form(Q, 8);
        if (rel_err(lll, box.minForm) <= 1e-9) ++equal;
        worstFactor = std::max(worstFactor, lll / box.minForm);
    }
    const double frac = 100.0 * equal / trials;
    const bool pass = equal >= (trials * 9 + 9) / 10 && worstFactor <= 4.0 * (1.0 + 1e-9);
    return {pass, fmt("%d trials, equal %.1f%% (need >= 90%%), worst factor %.3f (cap 4)", trials,
                      frac, worstFactor)};
}

// [3] successive conditioning vs joint-gaussian least squares, PSD chain
Outcome criterion_conditioning(bool quick) {
    const int trials = quick ? 40 : 200;
    Rng rng(substream_seed(3, "acceptance.schur"));
    double worstErr = 0.0, worstEig = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int K = 2 + t % 4;
        const auto inst = orc::random_feasible_instance(K, rng, 1e4);
        const EffectiveMac mac = build_effective_mac(inst.config, inst.alloc, inst.receiver);
        const IntMatrix A = select_coefficients(mac);
        const CofSolution sol = successive_rates(mac, A);
        const auto diag = conditioning_diagnostics(mac, A);
        for (double ev : diag.minEigenvalues) worstEig = std::min(worstEig, ev);

        std::vector<std::vector<std::int64_t>> rows(K, std::vector<std::int64_t>(K));
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) rows[i][j] = A(i, j);
        std::vector<double> h(mac.h_eff.data(), mac.h_eff.data() + K);
        std::vector<double> P(mac.P_eff.data(), mac.P_eff.data() + K);
        const auto oracle = orc::conditioning_lsq_oracle(h, P, rows);
        for (int k = 0; k < K; ++k) worstErr = std::max(worstErr, rel_err(sol.sigma2[k], oracle[k]));
    }
    const bool pass = worstErr <= 1e-8 && worstEig >= -1e-9;
    return {pass, fmt("%d trials, max rel err %.2e (tol 1e-8), min eigenvalue %.2e (floor -1e-9)",
                      trials, worstErr, worstEig)};
}

// [4] leakage invariance across P for the constant-share allocation family
Outcome criterion_leakage_invariance(bool quick) {
    const int seeds = quick ? 3 : 10;
    const auto grid = log_grid(1e4, 1e12, 9);
    double worst = 0.0;
    for (int s = 1; s <= seeds; ++s) {
        ChannelConfig config = sample_channel(3, static_cast<std::uint64_t>(s));
        config.P = grid.front();
        const BeamParams params = BeamParams::make(3, 2);
        const PowerAllocation base = default_allocation(config, params, 0.1);
        for (double P : grid) {
            const PowerAllocation scaled = base.scaled(P / grid.front());
            for (int l = 0; l < 3; ++l)
                for (int k = 0; k < 3; ++k) {
                    if (k == l) continue;
                    worst = std::max(worst, std::abs(leakage_term(config, scaled, l, k) -
                                                     leakage_term(config, base, l, k)));
                }
        }
    }
    return {worst <= 1e-9,
            fmt("%d seeds, 9 powers in [1e4,1e12], max |leakage drift| %.2e bits (tol 1e-9)",
                seeds, worst)};
}

// [5] degrees-of-freedom slope of the sum rate against (1/2)log2(1+P)
Outcome criterion_sdof(bool quick) {
    const int seeds = quick ? 5 : 20;
    const auto grid = log_grid(1e4, 1e12, 9);
    const BeamParams params = BeamParams::make(3, 2);
    double slopeMin = 1e9, slopeMax = -1e9;
    bool ratiosIncreasing = true;
    int pass = 0;
    for (int s = 1; s <= seeds; ++s) {
        const ChannelConfig config = sample_channel(3, static_cast<std::uint64_t>(s));
        const SdofSweep sweep = sdof_sweep(config, params, 0.1, grid);
        slopeMin = std::min(slopeMin, sweep.slope);
        slopeMax = std::max(slopeMax, sweep.slope);
        if (sweep.slope >= 0.9 && sweep.slope <= 1.05) ++pass;
        double prevRatio = -1e9;
        for (const auto& pt : sweep.points) {
            if (!pt.feasible) continue;
            if (pt.ratio < prevRatio - 1e-12) ratiosIncreasing = false;
            prevRatio = pt.ratio;
        }
    }
    const bool ok = pass == seeds && ratiosIncreasing;
    return {ok, fmt("%d seeds, slopes in [%.4f, %.4f] (need [0.9,1.05]), ratios increasing: %s",
                    seeds, slopeMin, slopeMax, ratiosIncreasing ? "yes" : "no")};
}

// [6] enumerated alignment fraction equals ((T-1)/T)^2 exactly
Outcome criterion_alignment(bool) {
    for (int K = 2; K <= 4; ++K) {
        for (int T = 2; T <= 6; ++T) {
            const BeamParams params = BeamParams::make(K, T);
            const double frac = alignment_fraction(0, 1, params);
            const auto count = static_cast<std::int64_t>(std::llround(frac * params.M));
            std::int64_t expected = (T - 1) * (T - 1);
            for (int i = 0; i < 2 * K - 4; ++i) expected *= T;
            if (count != expected)
                return {false, fmt("mismatch at K=%d T=%d: count %lld vs %lld", K, T,
                                   static_cast<long long>(count),
                                   static_cast<long long>(expected))};
        }
    }
    return {true, "T in {2..6} x K in {2..4}, enumerated counts match exactly"};
}

// [7] dithered folding uniformity plus the adversarial stub
Outcome criterion_crypto(bool quick) {
    const std::int64_t samples = quick ? 20000 : 100000;
    double worstP = 1.0;
    for (std::int64_t ratio : {2, 4, 8, 16}) {
        const auto chain = LatticeChain1D::make(16.0, 16.0 / static_cast<double>(ratio));
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto res = crypto_uniformity_test(chain, 3.5, samples, seed);
            worstP = std::min(worstP, res.pValue);
        }
    }
    const auto chain = LatticeChain1D::make(16.0, 1.0);
    const std::vector<double> stub(static_cast<std::size_t>(samples), 0.0);
    const double stubP = crypto_uniformity_from_dithers(chain, 3.5, stub).pValue;
    const bool ok = worstP > 0.001 && stubP < 0.001;
    return {ok, fmt("ratios {2,4,8,16} x 5 seeds, min p %.4f (need > 0.001); stub p %.1e", worstP,
                    stubP)};
}

// [8] quantization-index entropy against the aligned-sum bound
Outcome criterion_entropy(bool quick) {
    const std::int64_t samples = quick ? 20000 : 100000;
    const std::vector<std::pair<std::vector<double>, double>> cases = {
        {{1.0}, 1.0},
        {{1.0, 1.0, 1.0, 1.0}, 1.0},
        {{2.0, 1.0, 1.0}, 1.0},
        {{4.0, 4.0, 4.0, 4.0}, 4.0},
        {{100.0, 100.0, 100.0, 100.0}, 100.0},
        {{8.0, 4.0, 2.0, 1.0, 1.0}, 1.0},
    };
    double worstMargin = 1e9;
    std::uint64_t seed = 1;
    for (const auto& [powers, jamCell] : cases) {
        const auto res = quantization_entropy_check(powers, jamCell, samples, seed++);
        worstMargin = std::min(worstMargin, res.bound - res.empiricalEntropy);
    }
    return {worstMargin >= 0.0,
            fmt("%zu power profiles, min (bound - empirical) %.3f bits (need >= 0)", cases.size(),
                worstMargin)};
}

// [9] point-to-point recovery in the K = 1 degenerate case
Outcome criterion_awgn_anchor(bool) {
    double worst = 0.0;
    for (auto [h, p] : {std::pair{1.0, 10.0}, std::pair{0.5, 100.0}, std::pair{1.7, 1e6},
                        std::pair{0.9, 1e9}}) {
        EffectiveMac mac;
        mac.receiver = 0;
        mac.h_eff = Eigen::VectorXd::Constant(1, h);
        mac.P_eff = Eigen::VectorXd::Constant(1, p);
        mac.b_eff = Eigen::VectorXd::Constant(1, 1.0);
        IntMatrix A(1, 1);
        A(0, 0) = 1;
        const auto sol = successive_rates(mac, A);
        worst = std::max(worst, std::abs(sol.R_comb[0] - 0.5 * std::log2(1.0 + h * h * p)));
    }
    return {worst <= 1e-9, fmt("4 anchors, max |rate error| %.2e bits (tol 1e-9)", worst)};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome(bool)> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "mmse closed form vs beta-grid oracle", criterion_mmse},
    {2, "lll selection vs box enumeration", criterion_lll},
    {3, "successive conditioning vs lsq oracle", criterion_conditioning},
    {4, "leakage invariance under constant shares", criterion_leakage_invariance},
    {5, "sum-rate degrees-of-freedom slope", criterion_sdof},
    {6, "alignment fraction combinatorics", criterion_alignment},
    {7, "dither folding uniformity", criterion_crypto},
    {8, "quantization entropy bound", criterion_entropy},
    {9, "awgn point-to-point anchor", criterion_awgn_anchor},
};

}  // namespace

int main(int argc, char** argv) {
    int only = -1;
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--quick") == 0) {
            quick = true;
        } else {
            std::cerr << "usage: cofsec_acceptance [--criterion N] [--quick]\n";
            return 2;
        }
    }

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only > 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome outcome = c.run(quick);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%d] %-42s %s  (%s, %.1fs)\n", c.id, c.name,
                    outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), secs);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
