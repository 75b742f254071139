#include "divsym/divided_symmetrization.hpp"
#include "divsym/sandpile.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace divsym;

namespace {

using Distribution = std::map<Counts, Rational>;

std::vector<Counts> configs(std::uint32_t coins, std::size_t m)
{
    std::vector<Counts> out;
    for (const auto& c : oracle::all_compositions(coins, m)) out.emplace_back(c.begin(), c.end());
    return out;
}

std::size_t occupied(const CoinConfig& c)
{
    return static_cast<std::size_t>(std::count_if(c.counts().begin(), c.counts().end(), [](auto k) { return k > 0; }));
}

} // namespace

TEST(Coins, Validation)
{
    EXPECT_THROW(CoinConfig({1}), precondition_error);
    EXPECT_THROW(CoinConfig({2, 1, 0}), precondition_error);
    EXPECT_NO_THROW(CoinConfig({2, 0, 0}));
    EXPECT_NO_THROW(CoinConfig({0, 0}));
}

TEST(Coins, RobMovesOneCoin)
{
    const CoinConfig c({0, 2, 0, 0});
    EXPECT_EQ(rob(c, 1, Direction::left).counts(), (Counts{1, 1, 0, 0}));
    EXPECT_EQ(rob(c, 1, Direction::right).counts(), (Counts{0, 1, 1, 0}));
    const CoinConfig wrap({2, 0, 0, 0});
    EXPECT_EQ(rob(wrap, 0, Direction::left).counts(), (Counts{1, 0, 0, 1}));
    EXPECT_THROW(rob(c, 0, Direction::left), precondition_error);
    EXPECT_TRUE(is_final(CoinConfig({1, 0, 1})));
    EXPECT_FALSE(is_final(c));
}

TEST(Policy, Selection)
{
    const CoinConfig c({2, 0, 2, 0, 0});
    EXPECT_EQ(RobPolicy::lowest().select(c), 0u);
    EXPECT_EQ(RobPolicy::highest().select(c), 2u);
    const auto v = RobPolicy::seeded(5).select(c);
    EXPECT_TRUE(v == 0 || v == 2);
    EXPECT_EQ(RobPolicy::seeded(5).select(c), v);
    EXPECT_THROW(RobPolicy::lowest().select(CoinConfig({1, 0, 1})), precondition_error);
}

TEST(Exact, TwoCoinsOnTriangle)
{
    const Rational half = make_rational(1, 2);
    EXPECT_EQ(exact_absorption(CoinConfig({2, 0, 0})).distribution,
              (Distribution{{{1, 0, 1}, half}, {{1, 1, 0}, half}}));
    EXPECT_EQ(exact_absorption(CoinConfig({0, 2, 0})).distribution,
              (Distribution{{{0, 1, 1}, half}, {{1, 1, 0}, half}}));
}

TEST(Exact, FinalStateIsItsOwnLaw)
{
    const auto r = exact_absorption(CoinConfig({1, 1, 0}));
    EXPECT_EQ(r.distribution, (Distribution{{{1, 1, 0}, 1}}));
}

TEST(Exact, TwoVertexCycle)
{
    // Both moves of the single robbable vertex land on the same neighbour.
    const auto r = exact_absorption(CoinConfig({1, 0}));
    EXPECT_EQ(r.distribution, (Distribution{{{1, 0}, 1}}));
}

TEST(Exact, LawIsAProbabilityOnFinals)
{
    for (std::size_t m = 2; m <= 6; ++m) {
        for (std::uint32_t n = 0; n < m; ++n) {
            for (const auto& c : configs(n, m)) {
                const auto r = exact_absorption(CoinConfig(c));
                EXPECT_EQ(r.total(), 1);
                for (const auto& [fin, p] : r.distribution) {
                    EXPECT_TRUE(is_final(CoinConfig(fin)));
                    EXPECT_EQ(CoinConfig(fin).total(), n);
                    EXPECT_GT(p, 0);
                }
            }
        }
    }
}

TEST(Exact, HarmonicOverAllReachableStates)
{
    for (const Counts& start : {Counts{4, 0, 0, 0, 0}, Counts{0, 3, 0, 1, 0, 0}, Counts{2, 2, 0, 0, 0}}) {
        const auto all = absorption_all_states(CoinConfig(start));
        for (const auto& [counts, law] : all) {
            const CoinConfig s(counts);
            if (is_final(s)) continue;
            for (std::size_t v = 0; v < s.size(); ++v) {
                if (s[v] < 2) continue;
                // Harmonic for every robbable vertex, not just the one the policy picked.
                const auto left = exact_absorption(rob(s, v, Direction::left)).distribution;
                const auto right = exact_absorption(rob(s, v, Direction::right)).distribution;
                Distribution mix;
                for (const auto& [f, p] : left) mix[f] += p / 2;
                for (const auto& [f, p] : right) mix[f] += p / 2;
                std::erase_if(mix, [](const auto& kv) { return kv.second == 0; });
                EXPECT_EQ(mix, law.distribution);
            }
        }
    }
}

TEST(Exact, PolicyInvariance)
{
    for (std::size_t m = 3; m <= 6; ++m) {
        for (std::uint32_t n = 1; n < m; ++n) {
            for (const auto& c : configs(n, m)) {
                const CoinConfig cfg(c);
                EXPECT_TRUE(policy_invariance_check(cfg, RobPolicy::lowest(), RobPolicy::highest()));
                EXPECT_TRUE(policy_invariance_check(cfg, RobPolicy::lowest(), RobPolicy::seeded(17)));
            }
        }
    }
}

TEST(Exact, VertexEmptyMatchesDividedSymmetrization)
{
    // n coins on n+1 vertices: P(vertex n empty) = DS_path(prod y_i^{c_i}) / n!.
    for (std::size_t n = 1; n <= 4; ++n) {
        const Graph path = path_graph(n + 1);
        for (const auto& c : configs(static_cast<std::uint32_t>(n), n + 1)) {
            const Rational phi = ds_constant(prefix_sum_monomial(c), path);
            EXPECT_EQ(prob_vertex_empty(CoinConfig(c), n), phi / Rational(factorial(n)));
        }
    }
}

TEST(Exact, StateCap)
{
    SolverOptions opts;
    opts.max_states = 3;
    EXPECT_THROW(exact_absorption(CoinConfig({4, 0, 0, 0, 0}), RobPolicy::lowest(), opts), cap_exceeded);
}

TEST(Simulate, OccupiedCountNeverDecreases)
{
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        CoinConfig cur({5, 0, 0, 0, 0, 0, 0});
        std::size_t prev = occupied(cur);
        while (!is_final(cur)) {
            const std::size_t v = RobPolicy::lowest().select(cur);
            cur = rob(cur, v, (rng() >> 63) ? Direction::right : Direction::left);
            EXPECT_GE(occupied(cur), prev);
            prev = occupied(cur);
        }
        EXPECT_EQ(prev, 5u);
    }
}

TEST(Simulate, DeterministicAcrossWorkerCounts)
{
    const CoinConfig c({3, 0, 1, 0, 0});
    SimulationOptions one, four;
    one.workers = 1;
    four.workers = 4;
    const auto a = simulate(c, 99, 5000, RobPolicy::lowest(), one);
    const auto b = simulate(c, 99, 5000, RobPolicy::lowest(), four);
    EXPECT_EQ(a.hits, b.hits);
    EXPECT_NE(simulate(c, 100, 5000, RobPolicy::lowest(), one).hits, a.hits);
}

TEST(Simulate, AgreesWithExactLaw)
{
    const CoinConfig c({3, 0, 0, 0});
    const std::uint64_t trials = 40000;
    const auto sim = simulate(c, 7, trials, RobPolicy::seeded(3));
    const auto exact = exact_absorption(c);
    for (const auto& [fin, p] : exact.distribution) {
        const double expected = p.get_d();
        const double se = std::sqrt(expected * (1 - expected) / static_cast<double>(trials));
        EXPECT_NEAR(sim.frequency(fin), expected, 4 * se) << "final state differs beyond 4 standard errors";
    }
    std::uint64_t total = 0;
    for (const auto& [fin, h] : sim.hits) total += h;
    EXPECT_EQ(total, trials);
}

TEST(Simulate, StepCap)
{
    SimulationOptions opts;
    opts.max_steps_per_trial = 1;
    EXPECT_THROW(simulate(CoinConfig({4, 0, 0, 0, 0}), 1, 10, RobPolicy::lowest(), opts), cap_exceeded);
}
