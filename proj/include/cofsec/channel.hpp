#ifndef COFSEC_CHANNEL_HPP
#define COFSEC_CHANNEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cofsec/common.hpp"

namespace cofsec {

/// Gaussian broadcast channel with K receivers and K helpers.
///
/// h[l]    gain transmitter -> receiver l
/// G[i][l] gain helper i -> receiver l
/// P       total power budget, shared convention: the transmitter gets P and
///         the helpers jointly get P. Noise variance is fixed at 1.
///
/// Indices are 0-based in code; reports label receivers 1..K.
struct ChannelConfig {
    int K = 0;
    std::vector<double> h;
    std::vector<std::vector<double>> G;
    double P = 0.0;
};

/// Checks K >= 2, finite nonzero gains, matching shapes and P > 0.
ValidationResult validate(const ChannelConfig& config);

/// Samples gains i.i.d. uniform on [lo, hi]; continuous law, so the gain
/// tuple is rationally independent almost surely. Deterministic per seed.
/// Throws std::invalid_argument on an invalid range or K < 2.
ChannelConfig sample_channel(int K, std::uint64_t seed, double lo = 0.5, double hi = 2.0);

/// JSON round trip: {"K":int, "h":[...], "G":[[...]], "P":float}.
std::string to_json(const ChannelConfig& config);
ChannelConfig channel_from_json(const std::string& text);
ChannelConfig load_channel(const std::string& path);

}  // namespace cofsec

#endif
