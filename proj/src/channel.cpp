#include "cofsec/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cofsec/rng.hpp"
#include "json.hpp"

namespace cofsec {

ValidationResult validate(const ChannelConfig& config) {
    ValidationResult res;
    if (config.K < 2) res.fail("K >= 2 required, got K=" + std::to_string(config.K));
    const auto K = static_cast<std::size_t>(std::max(config.K, 0));
    if (config.h.size() != K) {
        res.fail("h must have length K");
    } else {
        for (std::size_t j = 0; j < K; ++j) {
            if (!std::isfinite(config.h[j]) || config.h[j] == 0.0)
                res.fail("nonzero finite gains required: h[" + std::to_string(j) + "]");
        }
    }
    if (config.G.size() != K) {
        res.fail("G must be K x K");
    } else {
        for (std::size_t i = 0; i < K; ++i) {
            if (config.G[i].size() != K) {
                res.fail("G must be K x K (row " + std::to_string(i) + ")");
                continue;
            }
            for (std::size_t j = 0; j < K; ++j) {
                if (!std::isfinite(config.G[i][j]) || config.G[i][j] == 0.0)
                    res.fail("nonzero finite gains required: G[" + std::to_string(i) + "][" +
                             std::to_string(j) + "]");
            }
        }
    }
    if (!(config.P > 0.0) || !std::isfinite(config.P)) res.fail("P > 0 required");
    return res;
}

ChannelConfig sample_channel(int K, std::uint64_t seed, double lo, double hi) {
    if (K < 2) throw std::invalid_argument("sample_channel: K >= 2 required");
    if (!(0.0 < lo && lo < hi)) throw std::invalid_argument("sample_channel: need 0 < lo < hi");

    Rng rng(substream_seed(seed, "channel"));
    ChannelConfig config;
    config.K = K;
    config.P = 100.0;
    config.h.resize(K);
    for (int j = 0; j < K; ++j) config.h[j] = rng.uniform(lo, hi);
    config.G.assign(K, std::vector<double>(K));
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) config.G[i][j] = rng.uniform(lo, hi);
    return config;
}

std::string to_json(const ChannelConfig& config) {
    nlohmann::json j;
    j["K"] = config.K;
    j["h"] = config.h;
    j["G"] = config.G;
    j["P"] = config.P;
    return j.dump(2);
}

ChannelConfig channel_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ChannelConfig config;
    config.K = j.at("K").get<int>();
    config.h = j.at("h").get<std::vector<double>>();
    config.G = j.at("G").get<std::vector<std::vector<double>>>();
    config.P = j.at("P").get<double>();
    return config;
}

ChannelConfig load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open channel config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return channel_from_json(buf.str());
}

}  // namespace cofsec
