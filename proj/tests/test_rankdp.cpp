#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <numbers>
#include <numeric>
#include <random>

#include "gstate/complete_fast.hpp"
#include "gstate/constructions.hpp"
#include "gstate/errors.hpp"
#include "gstate/rankdp.hpp"
#include "gstate/statevector.hpp"
#include "gstate/width.hpp"
#include "oracles.hpp"

using namespace gstate;

namespace {

RankDecomposition identity_caterpillar(const Graph &g) {
    std::vector<size_t> order(g.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    return linear_decomposition(g, order);
}

}  // namespace

TEST(RankDp, ZeroFunctional) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; t++) {
        size_t n = 1 + rng() % 12;
        Graph g = random_graph(n, 0.5, rng());
        MeasurementFunctional f(n, {cdouble(1), cdouble(0)});
        auto d = heuristic_rank_decomposition(g, 1).decomposition;
        EXPECT_NEAR(std::abs(amplitude_via_decomposition(g, d, f) - std::pow(2.0, -0.5 * n)), 0, 1e-13);
    }
}

TEST(RankDp, SingleEdgeOnes) {
    Graph g = oracle::path(2);
    MeasurementFunctional f(2, {cdouble(0), cdouble(1)});
    cdouble a = amplitude_via_decomposition(g, identity_caterpillar(g), f);
    EXPECT_NEAR(a.real(), -0.5, 1e-15);
    EXPECT_NEAR(a.imag(), 0, 1e-15);
}

TEST(RankDp, TinyGraphs) {
    Graph one(1);
    MeasurementFunctional f{{cdouble(0.3, 0.1), cdouble(-0.7, 0.2)}};
    EXPECT_NEAR(std::abs(amplitude_via_decomposition(one, exact_rank_width(one).decomposition, f) -
                         (f[0][0] + f[0][1]) / std::sqrt(2.0)),
                0, 1e-15);
}

TEST(RankDp, MatchesOracleOnRandomInstances) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 150; t++) {
        size_t n = 1 + rng() % 12;
        Graph g = random_graph(n, 0.15 + 0.7 * double(rng() % 100) / 100, rng());
        auto d = heuristic_rank_decomposition(g, static_cast<int>(t % 3), t).decomposition;
        auto f = oracle::random_functional(n, rng);
        EXPECT_NEAR(std::abs(amplitude_via_decomposition(g, d, f) - amplitude(g, f)), 0, 1e-9);
        auto r = oracle::random_rotations(n, rng);
        auto x = oracle::random_bits(n, rng);
        EXPECT_NEAR(probability_via_decomposition(g, d, r, x), probability(g, r, x), 1e-9);
    }
}

TEST(RankDp, DecompositionIndependence) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; t++) {
        size_t n = 2 + rng() % 10;
        Graph g = random_graph(n, 0.5, rng());
        auto f = oracle::random_functional(n, rng);
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        cdouble a = amplitude_via_decomposition(g, exact_rank_width(g).decomposition, f);
        cdouble b = amplitude_via_decomposition(g, linear_decomposition(g, order), f);
        cdouble c = amplitude_via_decomposition(g, heuristic_rank_decomposition(g, 0).decomposition, f);
        EXPECT_NEAR(std::abs(a - b), 0, 1e-10);
        EXPECT_NEAR(std::abs(a - c), 0, 1e-10);
    }
}

TEST(RankDp, CompleteGraphTriangle) {
    std::mt19937_64 rng(4);
    for (size_t n = 2; n <= 10; n++) {
        Graph k = oracle::complete(n);
        auto d = heuristic_rank_decomposition(k, 1).decomposition;
        auto r = oracle::random_rotations(n, rng);
        auto x = oracle::random_bits(n, rng);
        double a = probability(k, r, x);
        EXPECT_NEAR(probability_via_decomposition(k, d, r, x), a, 1e-9);
        EXPECT_NEAR(probability_complete(r, x), a, 1e-9);
    }
}

TEST(RankDp, SumsToOneAtEight) {
    std::mt19937_64 rng(5);
    Graph g = random_graph(8, 0.5, 5);
    auto d = heuristic_rank_decomposition(g, 1).decomposition;
    auto r = oracle::random_rotations(8, rng);
    double total = 0;
    for (uint32_t x = 0; x < 256; x++) {
        std::vector<uint8_t> bits(8);
        for (size_t q = 0; q < 8; q++) {
            bits[q] = (x >> q) & 1;
        }
        total += probability_via_decomposition(g, d, r, bits);
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(RankDp, Cycle40BeyondOracle) {
    Graph c = oracle::cycle(40);
    auto d = identity_caterpillar(c);
    ASSERT_EQ(d.width(), 2u);
    std::mt19937_64 rng(6);
    auto r = oracle::random_rotations(40, rng);
    auto x = oracle::random_bits(40, rng);
    auto start = std::chrono::steady_clock::now();
    double p = probability_via_decomposition(c, d, r, x);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(std::isfinite(p));
    EXPECT_GE(p, 0);
    EXPECT_LE(p, 1);
    EXPECT_LT(secs, 10);
    EXPECT_THROW(probability(c, r, x), InvalidInput);
}

TEST(RankDp, PathAgainstTransferMatrix) {
    // amplitude of a long path by an independent 2x2 transfer-matrix product
    std::mt19937_64 rng(7);
    size_t n = 60;
    Graph g = oracle::path(n);
    auto f = oracle::random_functional(n, rng);
    cdouble v[2] = {f[0][0], f[0][1]};
    for (size_t q = 1; q < n; q++) {
        cdouble w[2] = {(v[0] + v[1]) * f[q][0], (v[0] - v[1]) * f[q][1]};
        v[0] = w[0];
        v[1] = w[1];
    }
    cdouble expect = (v[0] + v[1]) * std::pow(2.0, -0.5 * double(n));
    cdouble got = amplitude_via_decomposition(g, heuristic_rank_decomposition(g, 1).decomposition, f);
    EXPECT_NEAR(std::abs(got - expect), 0, 1e-9 * std::max(1.0, std::abs(expect)));
}

TEST(RankDp, RejectsInvalidDecomposition) {
    Graph g = oracle::cycle(5);
    auto d = identity_caterpillar(g);
    d.vertex_of_node[0] = size_t{1};  // two leaves map to vertex 1
    MeasurementFunctional f(5, {cdouble(1), cdouble(0)});
    EXPECT_THROW(amplitude_via_decomposition(g, d, f), InvalidInput);
    auto other = identity_caterpillar(oracle::cycle(6));
    EXPECT_THROW(amplitude_via_decomposition(g, other, f), InvalidInput);
}

TEST(RankDp, PeakAccumulatorsBounded) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; t++) {
        size_t n = 2 + rng() % 14;
        Graph g = random_graph(n, 0.4, rng());
        auto d = heuristic_rank_decomposition(g, 1).decomposition;
        SignaturePlan plan(g, d);
        auto f = oracle::random_functional(n, rng);
        plan.contract(1, [&](size_t v, uint32_t z) { return f[v][z]; });
        size_t bound = 0;
        for (size_t w : d.edge_widths) {
            bound += size_t{1} << w;
        }
        EXPECT_LE(plan.last_stats().peak_live_accumulators, bound);
        EXPECT_EQ(plan.last_stats().edge_table_bound, bound);
        EXPECT_EQ(plan.width(), d.width());
    }
}

TEST(Marginal, EmptyAndFullPrefix) {
    std::mt19937_64 rng(9);
    Graph g = random_graph(7, 0.5, 9);
    auto d = heuristic_rank_decomposition(g, 1).decomposition;
    auto r = oracle::random_rotations(7, rng);
    EXPECT_EQ(marginal_probability(g, d, r, {}), 1.0);
    auto x = oracle::random_bits(7, rng);
    EXPECT_NEAR(marginal_probability(g, d, r, x), probability_via_decomposition(g, d, r, x), 1e-12);
    EXPECT_THROW(marginal_probability(g, d, r, std::vector<uint8_t>(8, 0)), InvalidInput);
}

TEST(Marginal, MatchesDenseSummation) {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 20; t++) {
        size_t n = 1 + rng() % 10;
        Graph g = random_graph(n, 0.5, rng());
        auto d = heuristic_rank_decomposition(g, 1).decomposition;
        auto r = oracle::random_rotations(n, rng);
        auto x = oracle::random_bits(n, rng);
        for (size_t len = 0; len <= n; len++) {
            std::vector<uint8_t> prefix(x.begin(), x.begin() + static_cast<long>(len));
            EXPECT_NEAR(marginal_probability(g, d, r, prefix), marginal_probability_dense(g, r, prefix), 1e-9);
        }
    }
}

TEST(ChainSampler, SeedReplay) {
    std::mt19937_64 rng(11);
    Graph g = random_graph(6, 0.5, 2);
    auto d = heuristic_rank_decomposition(g, 1).decomposition;
    auto r = oracle::random_rotations(6, rng);
    EXPECT_EQ(sample_via_chain(g, d, r, 300, 4), sample_via_chain(g, d, r, 300, 4));
}

TEST(ChainSampler, MatchesExactDistribution) {
    std::mt19937_64 rng(12);
    Graph g = random_graph(6, 0.5, 31);
    auto d = heuristic_rank_decomposition(g, 1).decomposition;
    auto r = oracle::random_rotations(6, rng);
    auto exact = outcome_distribution(g, r);
    std::vector<double> counts(64, 0);
    for (const auto &s : sample_via_chain(g, d, r, 100000, 3)) {
        uint32_t idx = 0;
        for (size_t q = 0; q < 6; q++) {
            idx |= uint32_t(s[q]) << q;
        }
        counts[idx]++;
    }
    double tv = 0;
    for (size_t i = 0; i < 64; i++) {
        tv += std::abs(counts[i] / 1e5 - exact[i]);
    }
    EXPECT_LE(tv / 2, 0.05);
}

TEST(ChainSampler, ProductStateBias) {
    std::mt19937_64 rng(13);
    size_t n = 5;
    Graph g(n);
    auto r = oracle::random_rotations(n, rng);
    auto d = heuristic_rank_decomposition(g, 1).decomposition;
    auto draws = sample_via_chain(g, d, r, 100000, 8);
    for (size_t q = 0; q < n; q++) {
        auto u = r[q].matrix();
        double p1 = std::norm((u[1][0] + u[1][1]) / std::sqrt(2.0));
        double ones = 0;
        for (const auto &s : draws) {
            ones += s[q];
        }
        EXPECT_NEAR(ones / 1e5, p1, 0.01);
    }
}

TEST(ChainSampler, DeterministicOutcomes) {
    // theta = pi/2, phi = 0 maps |+> to |1>
    Graph g(4);
    LocalRotations r(4, Rotation{std::numbers::pi / 2, 0});
    auto d = heuristic_rank_decomposition(g, 0).decomposition;
    for (const auto &s : sample_via_chain(g, d, r, 50, 1)) {
        EXPECT_EQ(s, std::vector<uint8_t>(4, 1));
    }
}
