#ifndef COFSEC_BEAMFORMING_HPP
#define COFSEC_BEAMFORMING_HPP

#include <cstdint>
#include <vector>

#include "cofsec/channel.hpp"

namespace cofsec {

/// Beam-forming dimension bookkeeping: each message splits into
/// M = T^(2K-2) sub-messages, one per exponent tuple.
struct BeamParams {
    int K = 0;
    int T = 0;
    std::int64_t M = 0;

    /// Validates and computes M; throws std::invalid_argument if K < 2, T < 2
    /// or M's exponent-tuple table would exceed memoryBoundBytes.
    static BeamParams make(int K, int T, std::int64_t memoryBoundBytes = 256LL << 20);
};

/// Exponent tuple (r_1, ..., r_{2K-2}), each entry in {1..T}.
using ExponentTuple = std::vector<int>;

/// Identifier of one base gain: h[j] or G[i][j].
struct GainRef {
    enum class Kind { H, G } kind;
    int i = -1;  // helper index for G, unused for H
    int j = -1;  // receiver index

    bool operator==(const GainRef&) const = default;
};

/// A monomial over channel gains, kept as exponents plus a lazily evaluated
/// value: comparisons always use exponents, never floats, because the value
/// overflows/underflows for large T.
struct Monomial {
    std::vector<GainRef> bases;   // length 2K-2
    std::vector<int> exponents;   // parallel to bases, entries in {1..T(+1)}

    double value(const ChannelConfig& config) const;
    double log2_value(const ChannelConfig& config) const;

    /// Dense exponent vector over all K + K*K gains (h's then G row-major);
    /// the canonical symbolic form used by alignment diagnostics.
    std::vector<int> full_exponents(int K) const;
};

/// Mixed-radix bijection {1..M} <-> {1..T}^(2K-2): m-1 written base T,
/// most-significant digit first, each digit + 1.
ExponentTuple phi(std::int64_t m, const BeamParams& params);
std::int64_t phi_inverse(const ExponentTuple& r, const BeamParams& params);

/// Beam-forming monomial for sub-message (m, l): product over the gains
/// {h_j : j != l} then {g_{l j} : j != l} with exponents phi(m). The same
/// monomial scales the transmitter's component (m, l) and helper l's m-th
/// jamming component, which is what aligns the pair at receivers k != l.
/// `receiver_l` is 0-based.
Monomial f_monomial(std::int64_t m, int receiver_l, const ChannelConfig& config,
                    const BeamParams& params);

/// Exact limit of the enumerated alignment fraction: ((T-1)/T)^2. Only the
/// h_k and g_{lk} exponents shift, so the value is independent of K, l, k.
double alignment_fraction_closed_form(int T);

/// Enumerated fraction of sub-message dimensions of stream l that coincide
/// at receiver k with helper l's jamming dimensions:
/// |{exponents of h_k f(m,l)} n {exponents of g_{lk} f(m,l)}| / M.
/// Indices 0-based; throws std::invalid_argument when k == l.
double alignment_fraction(int l, int k, const BeamParams& params);

/// Symbolic proxy for generic rational independence. Gains with bit-equal
/// values are merged into one symbol class; the check passes iff, at every
/// receiver, monomials that differ symbolically still differ after merging.
/// The designed message/jamming alignments collide symbolically already and
/// are therefore not counted; any coincidence created purely by equal gain
/// values (e.g. two receivers with identical gain rows) fails the check.
bool rational_independence_check(const ChannelConfig& config, const BeamParams& params);

}  // namespace cofsec

#endif
