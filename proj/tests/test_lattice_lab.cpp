#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "cofsec/lattice_lab.hpp"
#include "cofsec/rng.hpp"

using namespace cofsec;

namespace {

// Two-sample chi-square with equal sample sizes: sum (c1-c2)^2/(c1+c2).
double two_sample_stat(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    double stat = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double n = static_cast<double>(a[i] + b[i]);
        if (n == 0.0) continue;
        const double d = static_cast<double>(a[i] - b[i]);
        stat += d * d / n;
    }
    return stat;
}

}  // namespace

TEST_CASE("chain construction enforces integer nesting >= 2") {
    const auto chain = LatticeChain1D::make(8.0, 1.0);
    CHECK(chain.nesting_ratio() == 8);
    CHECK_THROWS_AS(LatticeChain1D::make(8.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeChain1D::make(8.0, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeChain1D::make(-8.0, 1.0), std::invalid_argument);
}

TEST_CASE("mod reduction lands in the representative cell") {
    const auto chain = LatticeChain1D::make(8.0, 1.0);
    CHECK(mod_reduce(9.5, chain) == doctest::Approx(1.5));
    CHECK(mod_reduce(-0.5, chain) == doctest::Approx(7.5));
    CHECK(mod_reduce(3.25, chain) == doctest::Approx(3.25));  // identity inside the cell
}

TEST_CASE("mod reduction is idempotent") {
    const auto chain = LatticeChain1D::make(8.0, 2.0);
    Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(-1e4, 1e4);
        const double r = mod_reduce(v, chain);
        CHECK(r >= 0.0);
        CHECK(r < chain.q_c);
        CHECK(mod_reduce(r, chain) == doctest::Approx(r).epsilon(1e-15));
    }
}

TEST_CASE("quantize picks the nearest coarse point with ties to even") {
    const auto chain = LatticeChain1D::make(8.0, 1.0);
    CHECK(quantize(3.9, chain) == doctest::Approx(0.0));
    CHECK(quantize(4.1, chain) == doctest::Approx(8.0));
    CHECK(quantize(4.0, chain) == 0.0);    // tie: 0 is the even multiple
    CHECK(quantize(-4.0, chain) == 0.0);   // tie from below
    CHECK(quantize(12.0, chain) == 16.0);  // tie between 8 and 16: even multiple wins
}

TEST_CASE("quantize and centered mod decompose every point") {
    const auto chain = LatticeChain1D::make(8.0, 1.0);
    Rng rng(77);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double v = rng.uniform(-1e5, 1e5);
        const double rebuilt =
            quantize(v, chain) + mod_reduce(v - quantize(v, chain) + chain.q_c / 2, chain) -
            chain.q_c / 2;
        worst = std::max(worst, std::abs(rebuilt - v));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("dithered folding is uniform across the fine cosets") {
    for (std::int64_t ratio : {2, 4, 8, 16}) {
        const auto chain = LatticeChain1D::make(8.0, 8.0 / static_cast<double>(ratio));
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            const auto res = crypto_uniformity_test(chain, 1.25, 20000, seed);
            CHECK(res.dof == ratio - 1);
            CHECK(res.pValue > 0.001);
        }
    }
}

TEST_CASE("a point-mass dither stub fails the uniformity test") {
    const auto chain = LatticeChain1D::make(8.0, 1.0);
    const std::vector<double> zeros(20000, 0.0);
    const auto res = crypto_uniformity_from_dithers(chain, 1.25, zeros);
    CHECK(res.pValue < 1e-6);
}

TEST_CASE("the folded law does not depend on the fixed codeword") {
    const auto chain = LatticeChain1D::make(8.0, 1.0);
    const auto a = crypto_uniformity_test(chain, 0.75, 50000, 11);
    const auto b = crypto_uniformity_test(chain, 6.5, 50000, 12);
    const double stat = two_sample_stat(a.counts, b.counts);
    // chi-square with 7 dof: 24.3 is the ~0.001 tail
    CHECK(stat < 24.32);
}

TEST_CASE("degenerate chains and bad inputs are rejected") {
    CHECK_THROWS_AS(crypto_uniformity_test(LatticeChain1D{8.0, 8.0}, 0.0, 100, 1),
                    std::invalid_argument);
    const auto chain = LatticeChain1D::make(8.0, 1.0);
    CHECK_THROWS_AS(crypto_uniformity_from_dithers(chain, -0.1, std::vector<double>(10, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(crypto_uniformity_from_dithers(chain, 8.0, std::vector<double>(10, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("single matched component concentrates on few cells") {
    const auto res = quantization_entropy_check({4.0}, 4.0, 100000, 3);
    CHECK(res.bound == doctest::Approx(2.0));
    CHECK(res.empiricalEntropy <= 2.0);
    CHECK(res.empiricalEntropy <= 0.1);  // one uniform inside one cell: index ~ 0
}

TEST_CASE("four equal components stay under the aligned-sum entropy bound") {
    const auto res = quantization_entropy_check({1.0, 1.0, 1.0, 1.0}, 1.0, 100000, 4);
    CHECK(res.bound == doctest::Approx(3.0));
    CHECK(res.empiricalEntropy <= 3.0);
    CHECK(res.empiricalEntropy > 0.5);  // but the sum does spread
}

TEST_CASE("the quantization index law is scale free") {
    const auto a = quantization_entropy_check({1.0, 2.0, 3.0}, 1.0, 100000, 5);
    const auto b = quantization_entropy_check({100.0, 200.0, 300.0}, 100.0, 100000, 5);
    CHECK(std::abs(a.empiricalEntropy - b.empiricalEntropy) <= 0.05);
}

TEST_CASE("entropy check validates its inputs") {
    CHECK_THROWS_AS(quantization_entropy_check({}, 1.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(quantization_entropy_check({1.0, -1.0}, 0.5, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(quantization_entropy_check({1.0, 2.0}, 1.5, 10, 1), std::invalid_argument);
}
