// cofsec: secure-rate analysis for the K-receiver Gaussian broadcast channel
// with cooperative jamming helpers, plus a scalar nested-lattice lab.
//
// Exit codes: 0 success, 1 infeasible input or failed check, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cofsec/beamforming.hpp"
#include "cofsec/channel.hpp"
#include "cofsec/cof.hpp"
#include "cofsec/lattice_lab.hpp"
#include "cofsec/power.hpp"
#include "cofsec/secure.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace {

using namespace cofsec;

struct ChannelSource {
    std::string configPath;
    std::uint64_t seed = 0;
    bool seeded = false;
    int K = 3;
    double lo = 0.5;
    double hi = 2.0;
    double P = -1.0;  // override when >= 0

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", configPath, "channel config JSON file");
        auto* s = cmd->add_option("--seed", seed, "sample a random channel from this seed");
        s->each([this](const std::string&) { seeded = true; });
        cmd->add_option("--k", K, "number of receivers for sampled channels")->check(CLI::Range(2, 16));
        cmd->add_option("--lo", lo, "lower gain bound for sampled channels");
        cmd->add_option("--hi", hi, "upper gain bound for sampled channels");
        cmd->add_option("--power", P, "override the power budget P");
    }

    ChannelConfig resolve() const {
        ChannelConfig config;
        if (!configPath.empty()) {
            config = load_channel(configPath);
        } else if (seeded) {
            config = sample_channel(K, seed, lo, hi);
        } else {
            throw CLI::ValidationError("channel", "either --config or --seed is required");
        }
        if (P >= 0.0) config.P = P;
        const auto valid = validate(config);
        if (!valid.ok()) throw InfeasibleError("invalid channel config: " + valid.joined());
        return config;
    }
};

void write_output(const std::string& outPath, const std::string& text) {
    if (outPath.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + outPath);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

std::vector<double> parse_powers(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

int run_rates(const ChannelSource& src, int T, double delta, bool dumpCof,
              const std::string& outPath) {
    const ChannelConfig config = src.resolve();
    const BeamParams params = BeamParams::make(config.K, T);
    const PowerAllocation alloc = default_allocation(config, params, delta);
    const SecureRateReport rep = theorem1_report(config, alloc);

    nlohmann::json j = nlohmann::json::parse(rep.to_json());
    j["K"] = config.K;
    j["T"] = T;
    j["delta"] = delta;
    j["P"] = config.P;
    if (dumpCof) {
        nlohmann::json cof = nlohmann::json::array();
        for (int l = 0; l < config.K; ++l)
            cof.push_back(nlohmann::json::parse(to_json(receiver_solution(config, alloc, l))));
        j["cof"] = cof;
    }
    write_output(outPath, j.dump(2));
    return 0;
}

int run_sweep(const ChannelSource& src, int T, double delta, double pMin, double pMax, int points,
              const std::string& outPath) {
    const ChannelConfig config = src.resolve();
    const BeamParams params = BeamParams::make(config.K, T);
    const SdofSweep sweep = sdof_sweep(config, params, delta, log_grid(pMin, pMax, points));
    write_output(outPath, sweep.to_csv());
    return 0;
}

int run_sdof(const ChannelSource& src, int T, double delta, double pMin, double pMax, int points,
             const std::string& outPath) {
    const ChannelConfig config = src.resolve();
    const BeamParams params = BeamParams::make(config.K, T);
    const SdofSweep sweep = sdof_sweep(config, params, delta, log_grid(pMin, pMax, points));
    write_output(outPath, sweep.to_json());
    bool anyFeasible = false;
    for (const auto& pt : sweep.points) anyFeasible |= pt.feasible;
    return anyFeasible ? 0 : 1;
}

int run_align_stats(int K, int tMin, int tMax, const std::string& outPath) {
    std::string csv = "T,K,fraction_exact,fraction_enumerated\n";
    char buf[128];
    for (int T = tMin; T <= tMax; ++T) {
        const BeamParams params = BeamParams::make(K, T);
        const double exact = alignment_fraction_closed_form(T);
        const double enumerated = alignment_fraction(0, 1, params);
        std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%.12g\n", T, K, exact, enumerated);
        csv += buf;
    }
    write_output(outPath, csv);
    return 0;
}

int run_lab(const std::string& test, double q, double fine, std::int64_t samples,
            std::uint64_t seed, double tFixed, const std::string& powersCsv, double jamCell,
            double slack, const std::string& outPath) {
    nlohmann::json j;
    j["test"] = test;
    j["seed"] = seed;
    if (test == "crypto") {
        const auto chain = LatticeChain1D::make(q, fine);
        const auto res = crypto_uniformity_test(chain, tFixed, samples, seed);
        j["q_c"] = q;
        j["q_f"] = fine;
        j["tFixed"] = tFixed;
        j["samples"] = res.nSamples;
        j["chi2"] = res.chi2;
        j["dof"] = res.dof;
        j["pValue"] = res.pValue;
        j["pass"] = res.pValue > 0.001;
    } else if (test == "entropy") {
        const auto powers = parse_powers(powersCsv);
        const auto res = quantization_entropy_check(powers, jamCell, samples, seed, slack);
        j["powers"] = powers;
        j["jamCellPower"] = jamCell;
        j["samples"] = samples;
        j["empiricalEntropy"] = res.empiricalEntropy;
        j["bound"] = res.bound;
        j["cellsHit"] = res.cellsHit;
        j["pass"] = res.empiricalEntropy <= res.bound;
    } else if (test == "decomp") {
        const auto chain = LatticeChain1D::make(q, fine);
        Rng rng(substream_seed(seed, "lab.decomp"));
        double worst = 0.0;
        for (std::int64_t i = 0; i < samples; ++i) {
            const double v = rng.uniform(-1e5, 1e5);
            const double rebuilt = quantize(v, chain) +
                                   mod_reduce(v - quantize(v, chain) + q / 2, chain) - q / 2;
            worst = std::max(worst, std::abs(rebuilt - v));
        }
        j["samples"] = samples;
        j["maxAbsError"] = worst;
        j["pass"] = worst <= 1e-9;
    } else {
        throw CLI::ValidationError("--test", "expected crypto, entropy or decomp");
    }
    write_output(outPath, j.dump(2));
    return j["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secure-rate engine for the Gaussian broadcast channel with helpers"};
    app.require_subcommand(1);

    std::string outPath;
    app.add_option("--out", outPath, "write output to this file instead of stdout");

    // rates
    auto* rates = app.add_subcommand("rates", "secure-rate report for one channel");
    ChannelSource ratesSrc;
    ratesSrc.attach(rates);
    int ratesT = 3;
    double ratesDelta = 0.1;
    bool dumpCof = false;
    rates->add_option("--t", ratesT, "beam-forming exponent range T")->check(CLI::Range(2, 64));
    rates->add_option("--delta", ratesDelta, "sub-noise jamming slack");
    rates->add_flag("--dump-cof", dumpCof, "include per-receiver decoding solutions");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sum-rate sweep over a power grid (CSV)");
    ChannelSource sweepSrc;
    sweepSrc.attach(sweep);
    int sweepT = 3;
    double sweepDelta = 0.1, pMin = 1e4, pMax = 1e12;
    int points = 9;
    sweep->add_option("--t", sweepT)->check(CLI::Range(2, 64));
    sweep->add_option("--delta", sweepDelta);
    sweep->add_option("--pmin", pMin);
    sweep->add_option("--pmax", pMax);
    sweep->add_option("--points", points)->check(CLI::Range(2, 1024));

    // sdof
    auto* sdof = app.add_subcommand("sdof", "degrees-of-freedom slope fit (JSON)");
    ChannelSource sdofSrc;
    sdofSrc.attach(sdof);
    int sdofT = 3;
    double sdofDelta = 0.1, sPMin = 1e4, sPMax = 1e12;
    int sPoints = 9;
    sdof->add_option("--t", sdofT)->check(CLI::Range(2, 64));
    sdof->add_option("--delta", sdofDelta);
    sdof->add_option("--pmin", sPMin);
    sdof->add_option("--pmax", sPMax);
    sdof->add_option("--points", sPoints)->check(CLI::Range(2, 1024));

    // align-stats
    auto* align = app.add_subcommand("align-stats", "alignment fraction diagnostics (CSV)");
    int alignK = 3, tMin = 2, tMax = 8;
    align->add_option("--k", alignK)->check(CLI::Range(2, 8));
    align->add_option("--tmin", tMin)->check(CLI::Range(2, 64));
    align->add_option("--tmax", tMax)->check(CLI::Range(2, 64));

    // lab
    auto* lab = app.add_subcommand("lab", "scalar nested-lattice experiments (JSON)");
    std::string labTest = "crypto";
    double labQ = 8.0, labFine = 1.0, labTFixed = 0.0, labJamCell = 1.0, labSlack = 2.0;
    std::int64_t labSamples = 100000;
    std::uint64_t labSeed = 1;
    std::string labPowers = "1,1,1,1";
    lab->add_option("--test", labTest, "crypto | entropy | decomp");
    lab->add_option("--q", labQ, "coarse lattice spacing");
    lab->add_option("--fine", labFine, "fine lattice spacing");
    lab->add_option("--samples", labSamples)->check(CLI::PositiveNumber);
    lab->add_option("--seed", labSeed);
    lab->add_option("--t-fixed", labTFixed, "fixed codeword offset (crypto test)");
    lab->add_option("--powers", labPowers, "comma-separated component powers (entropy test)");
    lab->add_option("--jam-cell", labJamCell, "coarse cell second moment (entropy test)");
    lab->add_option("--slack", labSlack, "entropy bound slack in bits");

    // oracle-check
    auto* oracle = app.add_subcommand("oracle-check", "independent oracle comparisons");
    bool quick = false;
    oracle->add_flag("--quick", quick, "reduced trial counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rates->parsed())
            return run_rates(ratesSrc, ratesT, ratesDelta, dumpCof, outPath);
        if (sweep->parsed())
            return run_sweep(sweepSrc, sweepT, sweepDelta, pMin, pMax, points, outPath);
        if (sdof->parsed())
            return run_sdof(sdofSrc, sdofT, sdofDelta, sPMin, sPMax, sPoints, outPath);
        if (align->parsed()) return run_align_stats(alignK, tMin, tMax, outPath);
        if (lab->parsed())
            return run_lab(labTest, labQ, labFine, labSamples, labSeed, labTFixed, labPowers,
                           labJamCell, labSlack, outPath);
        if (oracle->parsed()) {
            std::ostringstream table;
            const bool pass = oracles::run_oracle_checks(table, quick);
            write_output(outPath, table.str());
            return pass ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
