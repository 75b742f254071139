#include "divsym/divided_symmetrization.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace divsym;

namespace {

Polynomial x(std::size_t m, std::size_t i) { return Polynomial::variable(m, i); }

Polynomial mono(std::initializer_list<std::uint32_t> e) { return Polynomial::from_monomial(Monomial(e)); }

} // namespace

TEST(DsConstant, PathOfThreeExamples)
{
    const Graph p3 = path_graph(3);
    EXPECT_EQ(ds_constant(mono({2, 0, 0}), p3), 1);
    EXPECT_EQ(ds_constant(mono({0, 2, 0}), p3), -2);
    EXPECT_EQ(ds_constant(mono({1, 0, 0}), p3), 0);
    EXPECT_EQ(ds_constant(mono({1, 1, 0}), p3), 1);
}

TEST(DsConstant, OracleAgreesOnExamples)
{
    // Frozen values above, recomputed through the naive oracle at a second point.
    const Graph p3 = path_graph(3);
    const Point pt{Rational(-4), make_rational(1, 3), Rational(9)};
    EXPECT_EQ(oracle::naive_ds(mono({2, 0, 0}), p3, pt), 1);
    EXPECT_EQ(oracle::naive_ds(mono({0, 2, 0}), p3, pt), -2);
    EXPECT_EQ(oracle::naive_ds(mono({1, 0, 0}), p3, pt), 0);
    EXPECT_EQ(oracle::naive_ds(mono({1, 1, 0}), p3, pt), 1);
}

TEST(DsConstant, SingleVertexAndEmptyEdgeSet)
{
    const Graph one = Graph::from_edges(1, {});
    EXPECT_EQ(ds_constant(Polynomial::constant(1, 5), one), 5);
    // Two isolated vertices: 2! copies of the constant.
    const Graph two = Graph::from_edges(2, {});
    EXPECT_EQ(ds_constant(Polynomial::constant(2, 3), two), 6);
    EXPECT_EQ(ds_constant(Polynomial(3), path_graph(3)), 0);
}

TEST(DsConstant, Errors)
{
    const Graph p3 = path_graph(3);
    EXPECT_THROW(ds_constant(mono({3, 0, 0}), p3), precondition_error);
    EXPECT_THROW(ds_constant(mono({1, 0}), p3), precondition_error);
    EXPECT_THROW(ds_constant(mono({2, 0, 0}), p3, Point{1, 2, 1}), precondition_error);
    EXPECT_THROW(ds_constant(mono({2, 0, 0}), p3, Point{1, 2}), precondition_error);

    EngineOptions small;
    small.max_vertices = 2;
    EXPECT_THROW(ds_constant(mono({2, 0, 0}), p3, small), cap_exceeded);
}

TEST(DsConstant, VerifiedEvaluation)
{
    const Graph p3 = path_graph(3);
    EXPECT_EQ(ds_constant_verified(mono({0, 2, 0}), p3, Point{1, 2, 3}, Point{-7, 2, 11}), -2);
}

TEST(DsConstant, RationalCoefficientsAndPoints)
{
    const Graph p3 = path_graph(3);
    const Polynomial f = mono({2, 0, 0}) * make_rational(2, 3) + mono({0, 2, 0}) * make_rational(-1, 5);
    const Rational expected = make_rational(2, 3) + make_rational(2, 5);
    EXPECT_EQ(ds_constant(f, p3), expected);
    EXPECT_EQ(ds_constant(f, p3, Point{make_rational(1, 2), make_rational(-3, 7), Rational(4)}), expected);
}

TEST(DsConstant, WorkerCountDoesNotChangeResult)
{
    std::mt19937_64 rng(5);
    const Graph g = oracle::random_tree(8, rng);
    const Polynomial f = oracle::random_polynomial(8, 7, 6, rng);
    EngineOptions one, four;
    one.workers = 1;
    four.workers = 4;
    EXPECT_EQ(ds_constant(f, g, one), ds_constant(f, g, four));
}

TEST(DsConstant, WideIntegersFallBackToGmp)
{
    // Coordinates near 2^40 force the 64-bit fast path to overflow.
    const Graph p3 = path_graph(3);
    const Integer big = Integer(1) << 40;
    const Point pt{Rational(big), Rational(big + 3), Rational(-big)};
    EXPECT_EQ(ds_constant(mono({0, 2, 0}), p3, pt), -2);
    const Polynomial f = mono({1, 1, 0}) * Rational(Integer(1) << 70);
    EXPECT_EQ(ds_constant(f, p3), Rational(Integer(1) << 70));
}

TEST(DsViaComplete, Examples)
{
    const Graph p3 = path_graph(3);
    EXPECT_EQ(ds_via_complete(mono({2, 0, 0}), p3), ds_constant(mono({2, 0, 0}), p3));
    EXPECT_EQ(ds_via_complete(mono({2, 0, 0}), p3), 1);
    EXPECT_EQ(ds_via_complete(mono({0, 2, 0}), p3), -2);
    const Graph k3 = complete_graph(3);
    const Polynomial f = mono({2, 1, 0}) - mono({0, 1, 2});
    EXPECT_EQ(ds_via_complete(f, k3), ds_constant(f, k3));
}

TEST(DisconnectedFactorization, Examples)
{
    const Graph p2 = path_graph(2);
    const auto sides = check_eq1(mono({1, 0}), mono({0, 1}), p2, p2);
    EXPECT_TRUE(sides.holds());
    // Oracle: brute force over the 24 permutations of the 4-vertex union.
    const Polynomial product = mono({1, 0, 0, 1});
    const Graph u = disjoint_union(p2, p2);
    EXPECT_EQ(sides.lhs, oracle::naive_ds(product, u, Point{3, -1, 7, 2}));
    EXPECT_EQ(sides.lhs, -6);

    const auto low = check_eq1(Polynomial::constant(2, 1), mono({2, 0}), p2, p2);
    EXPECT_EQ(low.rhs, 0);
    EXPECT_EQ(low.lhs, 0);

    const Graph single = Graph::from_edges(1, {});
    const auto trivial = check_eq1(Polynomial::constant(1, 1), Polynomial::constant(1, 1), single, single);
    EXPECT_EQ(trivial.lhs, 2);
    EXPECT_EQ(trivial.rhs, 2);

    EXPECT_THROW(check_eq1(mono({2, 0}), mono({1, 0}), p2, p2), precondition_error);
}

TEST(SymmetricFactorVanishing, Examples)
{
    const Graph p3 = path_graph(3);
    EXPECT_EQ(lemma1_vanishes(x(3, 0) + x(3, 1), {{1, 2}}, {0, 1}, p3), 0);

    const Polynomial e2 = x(3, 0) * x(3, 1) + x(3, 0) * x(3, 2) + x(3, 1) * x(3, 2);
    EXPECT_EQ(lemma1_vanishes(e2, {}, {0, 1, 2}, p3), 0);
    EXPECT_EQ(oracle::naive_ds(e2, p3, Point{2, 5, -3}), 0);

    const Polynomial e1 = x(3, 0) + x(3, 1) + x(3, 2);
    EXPECT_EQ(lemma1_vanishes(e1, {}, {0, 1, 2}, p3, x(3, 0)), 0);
    EXPECT_EQ(oracle::naive_ds(e1 * x(3, 0), p3, Point{2, 5, -3}), 0);
}

TEST(SymmetricFactorVanishing, Errors)
{
    const Graph p3 = path_graph(3);
    // x0 is not symmetric in {0,1}.
    EXPECT_THROW(lemma1_vanishes(x(3, 0), {{1, 2}}, {0, 1}, p3), precondition_error);
    // {0} is not a component once (1,2) is removed.
    EXPECT_THROW(lemma1_vanishes(x(3, 0), {{1, 2}}, {0}, p3), precondition_error);
    EXPECT_THROW(lemma1_vanishes(x(3, 0) + x(3, 1), {{0, 2}}, {0, 1}, p3), precondition_error);
    // A constant is symmetric but not a vanishing factor: DS of (x0-x1)(x1-x2) is 3! here.
    EXPECT_THROW(lemma1_vanishes(Polynomial::constant(3, 1), {{0, 1}, {1, 2}}, {0}, p3), precondition_error);
}

// Properties over randomized instances.

TEST(DsProperties, MatchesNaiveOracleAndIsPointIndependent)
{
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 2 + trial % 4;
        const Graph g = oracle::random_graph(m, 0.6, rng);
        const std::size_t deg = g.edge_count();
        const Polynomial f = oracle::random_polynomial(m, deg, 4, rng, true);
        const Rational value = ds_constant(f, g);
        EXPECT_EQ(value, ds_constant(f, g, oracle::integer_point(m, rng)));
        EXPECT_EQ(value, ds_constant(f, g, oracle::rational_point(m, rng)));
        EXPECT_EQ(value, oracle::naive_ds(f, g, oracle::rational_point(m, rng)));
    }
}

TEST(DsProperties, Linear)
{
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 2 + trial % 4;
        const Graph g = oracle::random_tree(m, rng);
        const Polynomial f = oracle::random_polynomial(m, m - 1, 3, rng);
        const Polynomial h = oracle::random_polynomial(m, m - 1, 3, rng);
        const Rational a = make_rational(static_cast<long>(rng() % 11) - 5, 3);
        const Rational b = make_rational(static_cast<long>(rng() % 7) + 1, 2);
        EXPECT_EQ(ds_constant(f * a + h * b, g), a * ds_constant(f, g) + b * ds_constant(h, g));
    }
}

TEST(DsProperties, ViaCompleteAgrees)
{
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 2 + trial % 4;
        const Graph g = oracle::random_graph(m, 0.5, rng);
        const Polynomial f = oracle::random_polynomial(m, g.edge_count(), 3, rng, true);
        EXPECT_EQ(ds_via_complete(f, g), ds_constant(f, g));
    }
}

TEST(DsProperties, SymmetricFactorVanishes)
{
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 3 + trial % 3;
        const Graph g = oracle::random_tree(m, rng);
        // Power sum p_k times a random cofactor of complementary degree.
        const std::size_t k = 1 + trial % (m - 1);
        Polynomial power_sum(m);
        for (std::size_t i = 0; i < m; ++i) power_sum += pow(x(m, i), k);
        const Polynomial cofactor = oracle::random_polynomial(m, m - 1 - k, 3, rng);
        EXPECT_EQ(ds_constant(power_sum * cofactor, g), 0);
    }
}

TEST(DsProperties, DisconnectedFactorization)
{
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t mu = 1 + trial % 3, mw = 1 + (trial / 3) % 3;
        const Graph gu = oracle::random_graph(mu, 0.7, rng), gw = oracle::random_graph(mw, 0.7, rng);
        const std::size_t du = trial % 4 == 0 && gu.edge_count() > 0 ? gu.edge_count() - 1 : gu.edge_count();
        const Polynomial fu = oracle::random_polynomial(mu, du, 3, rng);
        const Polynomial fw = oracle::random_polynomial(mw, gw.edge_count(), 3, rng);
        const auto sides = check_eq1(fu, fw, gu, gw);
        EXPECT_TRUE(sides.holds()) << to_string(sides.lhs) << " vs " << to_string(sides.rhs);
    }
}

TEST(Unrank, MatchesNextPermutationOrder)
{
    std::vector<std::size_t> perm{0, 1, 2, 3, 4};
    for (std::uint64_t r = 0; r < 120; ++r) {
        EXPECT_EQ(detail::unrank_permutation(5, r), perm);
        std::next_permutation(perm.begin(), perm.end());
    }
}
