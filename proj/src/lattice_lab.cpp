#include "cofsec/lattice_lab.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>

#include "cofsec/rng.hpp"

namespace cofsec {

std::int64_t LatticeChain1D::nesting_ratio() const {
    return static_cast<std::int64_t>(std::llround(q_c / q_f));
}

LatticeChain1D LatticeChain1D::make(double q_c, double q_f) {
    if (!(q_c > 0.0) || !(q_f > 0.0))
        throw std::invalid_argument("LatticeChain1D: spacings must be positive");
    const double ratio = q_c / q_f;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 || rounded < 2.0)
        throw std::invalid_argument("LatticeChain1D: q_c/q_f must be an integer >= 2");
    return {q_c, q_f};
}

double mod_reduce(double v, const LatticeChain1D& chain) {
    double r = v - chain.q_c * std::floor(v / chain.q_c);
    if (r >= chain.q_c) r -= chain.q_c;  // guard against floor rounding at the edge
    if (r < 0.0) r += chain.q_c;
    return r;
}

double quantize(double v, const LatticeChain1D& chain) {
    // std::remainder rounds the quotient half to even, which is exactly the
    // declared tie rule.
    return v - std::remainder(v, chain.q_c);
}

UniformityTestResult chi_square_uniformity(const std::vector<std::int64_t>& counts) {
    UniformityTestResult res;
    res.counts = counts;
    res.dof = static_cast<int>(counts.size()) - 1;
    std::int64_t n = 0;
    for (auto c : counts) n += c;
    res.nSamples = n;
    if (res.dof < 1 || n == 0) throw std::invalid_argument("chi_square_uniformity: need >= 2 bins");

    const double expected = static_cast<double>(n) / static_cast<double>(counts.size());
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        res.chi2 += d * d / expected;
    }
    res.pValue = boost::math::gamma_q(res.dof / 2.0, res.chi2 / 2.0);
    return res;
}

UniformityTestResult crypto_uniformity_from_dithers(const LatticeChain1D& chain, double t_fixed,
                                                    std::span<const double> dithers) {
    const std::int64_t L = chain.nesting_ratio();
    if (L < 2) throw std::invalid_argument("crypto_uniformity: degenerate chain (q_c == q_f)");
    if (!(t_fixed >= 0.0 && t_fixed < chain.q_c))
        throw std::invalid_argument("crypto_uniformity: t_fixed must lie in [0, q_c)");

    std::vector<std::int64_t> counts(L, 0);
    for (double u : dithers) {
        const double w = mod_reduce(t_fixed + u, chain);
        auto idx = static_cast<std::int64_t>(std::floor(w / chain.q_f));
        idx = std::clamp<std::int64_t>(idx, 0, L - 1);
        ++counts[idx];
    }
    return chi_square_uniformity(counts);
}

UniformityTestResult crypto_uniformity_test(const LatticeChain1D& chain, double t_fixed,
                                            std::int64_t nSamples, std::uint64_t seed) {
    const std::int64_t L = chain.nesting_ratio();
    if (L < 2) throw std::invalid_argument("crypto_uniformity: degenerate chain (q_c == q_f)");

    Rng rng(substream_seed(seed, "lab.dither"));
    std::vector<double> dithers(nSamples);
    for (auto& u : dithers)
        u = chain.q_f * static_cast<double>(rng.below(static_cast<std::uint64_t>(L)));
    return crypto_uniformity_from_dithers(chain, t_fixed, dithers);
}

EntropyCheckResult quantization_entropy_check(const std::vector<double>& powers,
                                              double jamCellPower, std::int64_t nSamples,
                                              std::uint64_t seed, double slackBits) {
    if (powers.empty()) throw std::invalid_argument("entropy check: powers must be nonempty");
    double total = 0.0;
    double minPower = powers.front();
    for (double p : powers) {
        if (!(p > 0.0)) throw std::invalid_argument("entropy check: powers must be positive");
        total += p;
        minPower = std::min(minPower, p);
    }
    if (!(jamCellPower > 0.0) || jamCellPower > minPower * (1.0 + 1e-12))
        throw std::invalid_argument("entropy check: need 0 < jamCellPower <= min(powers)");

    // A uniform interval of width sqrt(12 p) has second moment p; the coarse
    // cell width is matched to jamCellPower the same way.
    const double q_c = std::sqrt(12.0 * jamCellPower);
    std::vector<double> widths(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) widths[i] = std::sqrt(12.0 * powers[i]);

    Rng rng(substream_seed(seed, "lab.entropy"));
    std::map<std::int64_t, std::int64_t> counts;
    for (std::int64_t s = 0; s < nSamples; ++s) {
        double sum = 0.0;
        for (double w : widths) sum += (rng.next_double() - 0.5) * w;
        const auto idx = static_cast<std::int64_t>(std::llround(sum / q_c));
        ++counts[idx];
    }

    EntropyCheckResult res;
    res.cellsHit = static_cast<std::int64_t>(counts.size());
    for (const auto& [idx, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(nSamples);
        res.empiricalEntropy -= p * std::log2(p);
    }
    res.bound = 0.5 * std::log2(total / jamCellPower) + slackBits;
    return res;
}

}  // namespace cofsec
