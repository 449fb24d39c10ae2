#include "cofsec/power.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace cofsec {

namespace {
constexpr double kStrictSlack = 1e-12;  // slack for strict float inequalities
}

void PowerAllocation::recompute_m_prime() {
    mPrime.resize(PJ.size());
    for (std::size_t l = 0; l < PJ.size(); ++l) {
        const auto& row = PJ[l];
        mPrime[l] = std::min_element(row.begin(), row.end()) - row.begin();
    }
}

PowerAllocation PowerAllocation::scaled(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("PowerAllocation::scaled: c > 0 required");
    PowerAllocation out = *this;
    for (auto& row : out.Pm)
        for (auto& v : row) v *= c;
    for (auto& row : out.PJ)
        for (auto& v : row) v *= c;
    for (auto& row : out.sigma2Lattice)
        for (auto& v : row) v *= c;
    return out;  // mPrime unchanged: scaling preserves the argmin
}

std::string PowerAllocation::to_json() const {
    nlohmann::json j;
    j["M"] = M;
    j["Pm"] = Pm;
    j["PJ"] = PJ;
    j["mPrime"] = mPrime;
    j["sigma2Lattice"] = sigma2Lattice;
    return j.dump(2);
}

PowerAllocation PowerAllocation::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    PowerAllocation a;
    a.M = j.at("M").get<std::int64_t>();
    a.Pm = j.at("Pm").get<std::vector<std::vector<double>>>();
    a.PJ = j.at("PJ").get<std::vector<std::vector<double>>>();
    if (j.contains("sigma2Lattice"))
        a.sigma2Lattice = j.at("sigma2Lattice").get<std::vector<std::vector<double>>>();
    a.recompute_m_prime();
    return a;
}

namespace {

PowerAllocation build_allocation(const ChannelConfig& config, const BeamParams& params,
                                 double delta, const std::vector<double>& messageShares) {
    const int K = config.K;
    const auto M = params.M;
    PowerAllocation alloc;
    alloc.M = M;
    alloc.Pm.assign(K, std::vector<double>(M));
    alloc.PJ.assign(K, std::vector<double>(M));

    double jamTotal = 0.0;
    for (int l = 0; l < K; ++l) {
        const double gll = config.G[l][l];
        const double pj = (1.0 - delta) / (static_cast<double>(M) * gll * gll);
        std::fill(alloc.PJ[l].begin(), alloc.PJ[l].end(), pj);
        jamTotal += pj * static_cast<double>(M);
    }
    if (jamTotal > config.P) {
        const double c = config.P / jamTotal;
        for (auto& row : alloc.PJ)
            for (auto& v : row) v *= c;
    }

    for (int l = 0; l < K; ++l) {
        const double pm = messageShares[l] * config.P / static_cast<double>(M);
        std::fill(alloc.Pm[l].begin(), alloc.Pm[l].end(), pm);
    }

    alloc.recompute_m_prime();
    alloc.sigma2Lattice.assign(K, std::vector<double>(M));
    for (int l = 0; l < K; ++l) {
        for (std::int64_t m = 1; m <= M; ++m) {
            const double f = f_monomial(m, l, config, params).value(config);
            alloc.sigma2Lattice[l][m - 1] = alloc.Pm[l][m - 1] / (f * f);
        }
    }
    return alloc;
}

}  // namespace

PowerAllocation default_allocation(const ChannelConfig& config, const BeamParams& params,
                                   double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("default_allocation: delta in (0, 1) required");
    const auto valid = validate(config);
    if (!valid.ok()) throw std::invalid_argument("default_allocation: " + valid.joined());
    if (config.K != params.K) throw std::invalid_argument("default_allocation: K mismatch");

    const std::vector<double> equalShares(config.K, 1.0 / config.K);
    PowerAllocation alloc = build_allocation(config, params, delta, equalShares);
    const auto check = check_allocation(alloc, config);
    if (!check.ok())
        throw InfeasibleError("default_allocation: budget P=" + std::to_string(config.P) +
                              " cannot dominate the jamming components: " + check.joined());
    return alloc;
}

ValidationResult check_allocation(const PowerAllocation& alloc, const ChannelConfig& config) {
    ValidationResult res;
    const int K = config.K;
    if (static_cast<int>(alloc.Pm.size()) != K || static_cast<int>(alloc.PJ.size()) != K) {
        res.fail("allocation has wrong number of rows");
        return res;
    }
    const auto M = alloc.M;
    for (int l = 0; l < K; ++l) {
        if (static_cast<std::int64_t>(alloc.Pm[l].size()) != M ||
            static_cast<std::int64_t>(alloc.PJ[l].size()) != M) {
            res.fail("allocation row " + std::to_string(l) + " has wrong length");
            return res;
        }
    }

    double totalPm = 0.0, totalPJ = 0.0;
    for (int l = 0; l < K; ++l) {
        double jamSum = 0.0;
        double pmMin = std::numeric_limits<double>::infinity();
        double pjMax = -std::numeric_limits<double>::infinity();
        std::int64_t pjMaxIdx = 0;
        for (std::int64_t m = 0; m < M; ++m) {
            const double pm = alloc.Pm[l][m];
            const double pj = alloc.PJ[l][m];
            if (!(pm > 0.0)) res.fail("Pm[" + std::to_string(l) + "][" + std::to_string(m) + "] <= 0");
            if (!(pj > 0.0)) res.fail("PJ[" + std::to_string(l) + "][" + std::to_string(m) + "] <= 0");
            jamSum += pj;
            totalPm += pm;
            totalPJ += pj;
            if (pm < pmMin) pmMin = pm;
            if (pj > pjMax) {
                pjMax = pj;
                pjMaxIdx = m;
            }
        }
        const double gll = config.G[l][l];
        if (!(gll * gll * jamSum < 1.0 - kStrictSlack))
            res.fail("sub-noise jamming violated at helper " + std::to_string(l) +
                     ": g^2*sum(PJ) = " + std::to_string(gll * gll * jamSum));
        if (!(pjMax < pmMin - kStrictSlack))
            res.fail("jamming not dominated by messages at l=" + std::to_string(l) +
                     ", m1=" + std::to_string(pjMaxIdx) + ": max PJ = " + std::to_string(pjMax) +
                     " vs min Pm = " + std::to_string(pmMin));
    }
    if (!(totalPm <= config.P * (1.0 + 1e-12)))
        res.fail("message budget exceeded: sum Pm = " + std::to_string(totalPm) + " > P");
    if (!(totalPJ <= config.P * (1.0 + 1e-12)))
        res.fail("helper budget exceeded: sum PJ = " + std::to_string(totalPJ) + " > P");
    return res;
}

std::string GridSpec::to_json() const {
    nlohmann::json j;
    j["deltas"] = deltas;
    j["shareSteps"] = shareSteps;
    return j.dump(2);
}

GridSpec GridSpec::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    GridSpec g;
    if (j.contains("deltas")) g.deltas = j.at("deltas").get<std::vector<double>>();
    if (j.contains("shareSteps")) g.shareSteps = j.at("shareSteps").get<int>();
    return g;
}

namespace {

// Lexicographically ordered compositions of `steps` into K positive parts;
// zero shares are excluded because every component power must be positive.
void enumerate_shares(int K, int steps, std::vector<int>& cur,
                      const std::function<void(const std::vector<int>&)>& emit) {
    if (static_cast<int>(cur.size()) == K - 1) {
        int used = 0;
        for (int v : cur) used += v;
        const int last = steps - used;
        if (last >= 1) {
            cur.push_back(last);
            emit(cur);
            cur.pop_back();
        }
        return;
    }
    int used = 0;
    for (int v : cur) used += v;
    for (int v = 1; v <= steps - used - (K - 1 - static_cast<int>(cur.size())); ++v) {
        cur.push_back(v);
        enumerate_shares(K, steps, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

PowerAllocation grid_search(const ChannelConfig& config, const BeamParams& params,
                            const RateObjective& objective, const GridSpec& grid) {
    const int K = config.K;
    bool found = false;
    double bestValue = -std::numeric_limits<double>::infinity();
    PowerAllocation best;

    for (double delta : grid.deltas) {
        std::vector<int> cur;
        enumerate_shares(K, grid.shareSteps, cur, [&](const std::vector<int>& parts) {
            std::vector<double> shares(K);
            for (int l = 0; l < K; ++l)
                shares[l] = static_cast<double>(parts[l]) / grid.shareSteps;
            PowerAllocation cand = build_allocation(config, params, delta, shares);
            if (!check_allocation(cand, config).ok()) return;
            const double value = objective(cand);
            if (!found || value > bestValue) {  // strict improvement: first-found tie-break
                found = true;
                bestValue = value;
                best = std::move(cand);
            }
        });
    }
    if (!found) throw InfeasibleError("grid_search: no feasible grid point");
    return best;
}

}  // namespace cofsec
