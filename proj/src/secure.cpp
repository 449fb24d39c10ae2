#include "cofsec/secure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace cofsec {

double leakage_term(const ChannelConfig& config, const PowerAllocation& alloc, int l, int k) {
    const int K = config.K;
    if (l < 0 || l >= K || k < 0 || k >= K)
        throw std::invalid_argument("leakage_term: index out of range");
    if (k == l) throw std::invalid_argument("leakage_term: k == l is not an eavesdropper pair");

    const double hk = config.h[k];
    const double glk = config.G[l][k];
    double num = 0.0;
    for (std::int64_t m = 0; m < alloc.M; ++m)
        num += hk * hk * alloc.Pm[l][m] + glk * glk * alloc.PJ[l][m];
    const double den = glk * glk * alloc.PJ[l][alloc.mPrime[l]];
    return 0.5 * std::log2(num / den);
}

double intended_rate(const CofSolution& sol, int receiver_l) {
    const double s2max = *std::max_element(sol.sigma2.begin(), sol.sigma2.end());
    if (s2max <= 0.0) return kRateCapBits;
    const double rate = 0.5 * std::log2(sol.P_eff[receiver_l] / s2max);
    return std::clamp(rate, 0.0, kRateCapBits);
}

SecureRateReport theorem1_report(const ChannelConfig& config, const PowerAllocation& alloc) {
    const int K = config.K;
    SecureRateReport rep;
    rep.R.resize(K);
    rep.R_intended.resize(K);
    rep.leakage.assign(K, std::vector<double>(K, 0.0));

    for (int l = 0; l < K; ++l) {
        const CofSolution sol = receiver_solution(config, alloc, l);
        rep.R_intended[l] = intended_rate(sol, l);
        double worst = 0.0;
        for (int k = 0; k < K; ++k) {
            if (k == l) continue;
            rep.leakage[l][k] = leakage_term(config, alloc, l, k);
            worst = std::max(worst, rep.leakage[l][k]);
        }
        rep.R[l] = std::max(0.0, rep.R_intended[l] - worst);
        rep.sumRate += rep.R[l];
    }
    return rep;
}

std::vector<double> log_grid(double pMin, double pMax, int nPoints) {
    if (!(pMin > 0.0 && pMax > pMin) || nPoints < 2)
        throw std::invalid_argument("log_grid: need 0 < pMin < pMax and nPoints >= 2");
    std::vector<double> grid(nPoints);
    const double step = (std::log10(pMax) - std::log10(pMin)) / (nPoints - 1);
    for (int i = 0; i < nPoints; ++i) grid[i] = std::pow(10.0, std::log10(pMin) + i * step);
    return grid;
}

SdofSweep sdof_sweep(const ChannelConfig& configTemplate, const BeamParams& params, double delta,
                     const std::vector<double>& Pgrid) {
    for (std::size_t i = 1; i < Pgrid.size(); ++i)
        if (!(Pgrid[i] > Pgrid[i - 1]))
            throw std::invalid_argument("sdof_sweep: grid must be strictly increasing");

    SdofSweep sweep;
    for (double P : Pgrid) {
        ChannelConfig config = configTemplate;
        config.P = P;
        SweepPoint pt;
        pt.P = P;
        pt.benchmark = 0.5 * std::log2(1.0 + P);
        try {
            const PowerAllocation alloc = default_allocation(config, params, delta);
            const SecureRateReport rep = theorem1_report(config, alloc);
            pt.feasible = true;
            pt.R = rep.R;
            pt.sumRate = rep.sumRate;
            pt.ratio = rep.sumRate / pt.benchmark;
        } catch (const InfeasibleError&) {
            pt.feasible = false;
        }
        sweep.points.push_back(std::move(pt));
    }

    // least-squares slope of sumRate against the benchmark, top half of grid
    const std::size_t n = sweep.points.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = n / 2; i < n; ++i) {
        const auto& pt = sweep.points[i];
        if (!pt.feasible) continue;
        sx += pt.benchmark;
        sy += pt.sumRate;
        sxx += pt.benchmark * pt.benchmark;
        sxy += pt.benchmark * pt.sumRate;
        ++cnt;
    }
    if (cnt >= 2 && sxx * cnt - sx * sx > 0)
        sweep.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return sweep;
}

std::string SecureRateReport::to_json() const {
    nlohmann::json j;
    j["R"] = R;
    j["R_intended"] = R_intended;
    j["leakage"] = leakage;
    j["sumRate"] = sumRate;
    j["epsilonSlack"] = epsilonSlack;
    return j.dump(2);
}

std::string SdofSweep::to_json() const {
    nlohmann::json j;
    j["slope"] = slope;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& pt : points) {
        nlohmann::json p;
        p["P"] = pt.P;
        p["feasible"] = pt.feasible;
        p["sumRate"] = pt.sumRate;
        p["benchmark"] = pt.benchmark;
        p["ratio"] = pt.ratio;
        pts.push_back(std::move(p));
    }
    j["points"] = pts;
    return j.dump(2);
}

std::string SdofSweep::to_csv() const {
    std::string out;
    std::size_t cols = 0;
    for (const auto& pt : points) cols = std::max(cols, pt.R.size());

    out += "P";
    for (std::size_t l = 1; l <= cols; ++l) out += ",R_" + std::to_string(l);
    out += ",sumRate,halfLog2_1pP,ratio\n";

    char buf[64];
    const auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    };
    for (const auto& pt : points) {
        out += fmt(pt.P);
        for (std::size_t l = 0; l < cols; ++l)
            out += "," + (l < pt.R.size() ? fmt(pt.R[l]) : std::string("nan"));
        out += "," + fmt(pt.sumRate) + "," + fmt(pt.benchmark) + "," + fmt(pt.ratio) + "\n";
    }
    return out;
}

}  // namespace cofsec
