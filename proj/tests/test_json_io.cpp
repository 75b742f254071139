#include "divsym/json_io.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace divsym;
using io::json;

TEST(JsonRational, RoundTrip)
{
    const Rational q = make_rational(-7, 12);
    EXPECT_EQ(io::rational_to_json(q), json::array({"-7", "12"}));
    EXPECT_EQ(io::rational_from_json(io::rational_to_json(q)), q);
    EXPECT_EQ(io::rational_from_json(json::array({"2", "4"})), make_rational(1, 2));
    EXPECT_EQ(io::rational_from_json(json(5)), 5);
    const Rational big(Integer("123456789012345678901234567890"));
    EXPECT_EQ(io::rational_from_json(io::rational_to_json(big)), big);
    EXPECT_THROW(io::rational_from_json(json::array({"1", "0"})), input_error);
    EXPECT_THROW(io::rational_from_json(json::array({"1x", "2"})), input_error);
    EXPECT_THROW(io::rational_from_json(json(1.5)), input_error);
}

TEST(JsonPolynomial, RoundTripRandom)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Polynomial p = oracle::random_polynomial(1 + trial % 5, trial % 4, 4, rng, true);
        const json j = io::polynomial_to_json(p);
        EXPECT_EQ(j.at("format"), 1);
        EXPECT_EQ(io::polynomial_from_json(j), p);
        EXPECT_EQ(io::polynomial_from_json(json::parse(j.dump())), p);
    }
}

TEST(JsonPolynomial, ParsesHandWrittenDocument)
{
    const json j = json::parse(R"({"m": 3, "terms": [{"coef": ["1", "1"], "exp": [2, 0, 0]},
                                                     {"coef": [-1, 2], "exp": [0, 1, 1]}]})");
    const Polynomial p = io::polynomial_from_json(j);
    EXPECT_EQ(p.coefficient(Monomial{2, 0, 0}), 1);
    EXPECT_EQ(p.coefficient(Monomial{0, 1, 1}), make_rational(-1, 2));
}

TEST(JsonPolynomial, Errors)
{
    EXPECT_THROW(io::polynomial_from_json(json::parse(R"({"terms": []})")), input_error);
    EXPECT_THROW(io::polynomial_from_json(json::parse(R"({"m": 2, "terms": [{"coef": 1, "exp": [1]}]})")), input_error);
    EXPECT_THROW(io::polynomial_from_json(json::parse(R"({"m": 1, "terms": [{"coef": 1, "exp": [-1]}]})")), input_error);
    EXPECT_THROW(io::polynomial_from_json(json::parse(R"({"format": 2, "m": 1, "terms": []})")), input_error);
}

TEST(JsonGraph, RoundTripAndStrictOrder)
{
    const Graph g = cycle_graph(5);
    EXPECT_EQ(io::graph_from_json(io::graph_to_json(g)), g);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"m": 3, "edges": [[1, 0]]})")), input_error);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"m": 3, "edges": [[1, 1]]})")), input_error);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"m": 3, "edges": [[0, 1], [0, 1]]})")), input_error);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"m": 3, "edges": [[0, 5]]})")), input_error);
}

TEST(JsonWeights, RoundTripAndValidation)
{
    const WeightAssignment w({-1, 1, -1});
    EXPECT_EQ(io::weights_from_json(io::weights_to_json(w)).values(), w.values());
    EXPECT_THROW(io::weights_from_json(json::parse(R"({"w": [0, 0]})")), input_error);
    EXPECT_THROW(io::weights_from_json(json::parse(R"({"w": [-2, 1]})")), input_error);
}

TEST(JsonSandpile, ConfigAndResults)
{
    const CoinConfig c({2, 0, 0});
    EXPECT_EQ(io::config_from_json(io::config_to_json(c)), c);
    EXPECT_THROW(io::config_from_json(json::parse(R"({"counts": [3, 0, 0]})")), input_error);
    EXPECT_THROW(io::config_from_json(json::parse(R"({"counts": [-1, 0, 0]})")), input_error);

    const auto law = exact_absorption(c);
    const json j = io::absorption_to_json(law);
    EXPECT_EQ(j, json::parse(R"([{"final": [1, 0, 1], "prob": ["1", "2"]},
                                 {"final": [1, 1, 0], "prob": ["1", "2"]}])"));
    EXPECT_EQ(io::absorption_from_json(j), law);

    const auto sim = simulate(c, 1, 100);
    const json s = io::simulation_to_json(sim);
    EXPECT_EQ(s.at("trials"), 100);
    std::uint64_t total = 0;
    for (const auto& r : s.at("results")) total += r.at("hits").get<std::uint64_t>();
    EXPECT_EQ(total, 100u);
}

TEST(JsonManifest, RoundTrip)
{
    io::RunManifest m;
    m.command = "sandpile simulate";
    m.inputs = {{"config", "c.json"}, {"trials", 1000}};
    m.seed = 42;
    m.caps = {{"max_states", 100000}};
    m.version = "1.0.0";
    m.duration_ms = 12.5;
    EXPECT_EQ(io::manifest_from_json(json::parse(io::manifest_to_json(m).dump())), m);
    m.seed.reset();
    EXPECT_EQ(io::manifest_from_json(io::manifest_to_json(m)), m);
    EXPECT_THROW(io::manifest_from_json(json::parse(R"({"command": 1})")), input_error);
}
