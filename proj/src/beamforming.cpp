#include "cofsec/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace cofsec {

BeamParams BeamParams::make(int K, int T, std::int64_t memoryBoundBytes) {
    if (K < 2) throw std::invalid_argument("BeamParams: K >= 2 required");
    if (T < 2) throw std::invalid_argument("BeamParams: T >= 2 required");
    const int dims = 2 * K - 2;
    std::int64_t M = 1;
    for (int i = 0; i < dims; ++i) {
        if (M > (std::int64_t(1) << 62) / T)
            throw std::invalid_argument("BeamParams: M = T^(2K-2) overflows");
        M *= T;
    }
    const std::int64_t bytesPerTuple = static_cast<std::int64_t>(dims) * sizeof(int);
    if (M > memoryBoundBytes / bytesPerTuple)
        throw std::invalid_argument("BeamParams: M = " + std::to_string(M) +
                                    " exceeds the configured memory bound");
    return BeamParams{K, T, M};
}

ExponentTuple phi(std::int64_t m, const BeamParams& params) {
    if (m < 1 || m > params.M) throw std::invalid_argument("phi: m out of range [1, M]");
    const int dims = 2 * params.K - 2;
    ExponentTuple r(dims);
    std::int64_t rem = m - 1;
    for (int pos = dims - 1; pos >= 0; --pos) {
        r[pos] = static_cast<int>(rem % params.T) + 1;
        rem /= params.T;
    }
    return r;
}

std::int64_t phi_inverse(const ExponentTuple& r, const BeamParams& params) {
    const int dims = 2 * params.K - 2;
    if (static_cast<int>(r.size()) != dims)
        throw std::invalid_argument("phi_inverse: tuple has wrong length");
    std::int64_t m = 0;
    for (int pos = 0; pos < dims; ++pos) {
        if (r[pos] < 1 || r[pos] > params.T)
            throw std::invalid_argument("phi_inverse: entry out of range [1, T]");
        m = m * params.T + (r[pos] - 1);
    }
    return m + 1;
}

double Monomial::log2_value(const ChannelConfig& config) const {
    double acc = 0.0;
    for (std::size_t t = 0; t < bases.size(); ++t) {
        const auto& b = bases[t];
        const double g = (b.kind == GainRef::Kind::H) ? config.h[b.j] : config.G[b.i][b.j];
        acc += exponents[t] * std::log2(std::abs(g));
    }
    return acc;
}

double Monomial::value(const ChannelConfig& config) const {
    double acc = 1.0;
    for (std::size_t t = 0; t < bases.size(); ++t) {
        const auto& b = bases[t];
        const double g = (b.kind == GainRef::Kind::H) ? config.h[b.j] : config.G[b.i][b.j];
        acc *= std::pow(g, exponents[t]);
    }
    return acc;
}

std::vector<int> Monomial::full_exponents(int K) const {
    std::vector<int> full(static_cast<std::size_t>(K) + static_cast<std::size_t>(K) * K, 0);
    for (std::size_t t = 0; t < bases.size(); ++t) {
        const auto& b = bases[t];
        const std::size_t idx = (b.kind == GainRef::Kind::H)
                                    ? static_cast<std::size_t>(b.j)
                                    : static_cast<std::size_t>(K) + static_cast<std::size_t>(b.i) * K + b.j;
        full[idx] += exponents[t];
    }
    return full;
}

Monomial f_monomial(std::int64_t m, int receiver_l, const ChannelConfig& config,
                    const BeamParams& params) {
    if (receiver_l < 0 || receiver_l >= params.K)
        throw std::invalid_argument("f_monomial: receiver index out of range");
    if (params.K != config.K) throw std::invalid_argument("f_monomial: K mismatch");
    const ExponentTuple r = phi(m, params);

    Monomial mono;
    mono.bases.reserve(r.size());
    for (int j = 0; j < params.K; ++j)
        if (j != receiver_l) mono.bases.push_back({GainRef::Kind::H, -1, j});
    for (int j = 0; j < params.K; ++j)
        if (j != receiver_l) mono.bases.push_back({GainRef::Kind::G, receiver_l, j});
    mono.exponents = r;
    return mono;
}

double alignment_fraction_closed_form(int T) {
    const double x = (T - 1.0) / T;
    return x * x;
}

namespace {

// Position of the h_k (resp. g_{lk}) exponent inside f(., l)'s tuple.
int h_position(int l, int k) { return (k < l) ? k : k - 1; }
int g_position(int K, int l, int k) { return (K - 1) + ((k < l) ? k : k - 1); }

}  // namespace

double alignment_fraction(int l, int k, const BeamParams& params) {
    if (l < 0 || l >= params.K || k < 0 || k >= params.K)
        throw std::invalid_argument("alignment_fraction: index out of range");
    if (k == l) throw std::invalid_argument("alignment_fraction: k == l has no cross alignment");

    const int hPos = h_position(l, k);
    const int gPos = g_position(params.K, l, k);

    std::set<ExponentTuple> msg, jam;
    for (std::int64_t m = 1; m <= params.M; ++m) {
        ExponentTuple r = phi(m, params);
        ExponentTuple shifted = r;
        shifted[hPos] += 1;  // received message component carries h_k * f(m, l)
        msg.insert(shifted);
        shifted = r;
        shifted[gPos] += 1;  // received jamming component carries g_{lk} * f(m, l)
        jam.insert(std::move(shifted));
    }

    std::int64_t common = 0;
    for (const auto& t : msg) common += jam.count(t);
    return static_cast<double>(common) / static_cast<double>(params.M);
}

bool rational_independence_check(const ChannelConfig& config, const BeamParams& params) {
    if (params.K != config.K) throw std::invalid_argument("K mismatch");
    const int K = params.K;

    // Merge gains with identical values into symbol classes.
    const std::size_t nGains = static_cast<std::size_t>(K) + static_cast<std::size_t>(K) * K;
    std::vector<double> gainValue(nGains);
    for (int j = 0; j < K; ++j) gainValue[j] = config.h[j];
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) gainValue[K + i * K + j] = config.G[i][j];
    std::map<double, int> classOf;
    std::vector<int> gainClass(nGains);
    int nClasses = 0;
    for (std::size_t t = 0; t < nGains; ++t) {
        auto [it, inserted] = classOf.try_emplace(gainValue[t], nClasses);
        if (inserted) ++nClasses;
        gainClass[t] = it->second;
    }

    const auto collapse = [&](const std::vector<int>& full) {
        std::vector<int> c(nClasses, 0);
        for (std::size_t t = 0; t < nGains; ++t) c[gainClass[t]] += full[t];
        return c;
    };

    // Per receiver, the arriving monomials are h_k f(m,l) for every stream l
    // and g_{lk} f(m,l) for every helper l. Distinct symbolic exponent
    // vectors must stay distinct after value-class merging.
    for (int k = 0; k < K; ++k) {
        std::map<std::vector<int>, std::vector<int>> collapsedToSymbolic;
        for (int l = 0; l < K; ++l) {
            for (std::int64_t m = 1; m <= params.M; ++m) {
                const Monomial base = f_monomial(m, l, config, params);
                std::vector<int> sym = base.full_exponents(K);
                for (int shift = 0; shift < 2; ++shift) {
                    std::vector<int> shifted = sym;
                    if (shift == 0)
                        shifted[k] += 1;  // via the transmitter, gain h_k
                    else
                        shifted[static_cast<std::size_t>(K) + static_cast<std::size_t>(l) * K + k] +=
                            1;  // via helper l, gain g_{lk}
                    std::vector<int> col = collapse(shifted);
                    auto [it, inserted] = collapsedToSymbolic.try_emplace(std::move(col), shifted);
                    if (!inserted && it->second != shifted) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace cofsec
