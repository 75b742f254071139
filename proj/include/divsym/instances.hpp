#pragma once

/**
 * @file instances.hpp
 * @brief Random and exhaustive instance generators used by the verify commands.
 *
 * All generators draw from a caller-owned std::mt19937_64, so a seed fixes the
 * instance sequence.
 */

#include "divsym/error.hpp"
#include "divsym/graph.hpp"
#include "divsym/polynomial.hpp"
#include "divsym/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace divsym::instances {

inline Point integer_point(std::size_t m, std::mt19937_64& rng, long lo = -30, long hi = 30)
{
    std::uniform_int_distribution<long> coord(lo, hi);
    Point pt;
    while (pt.size() < m) {
        Rational v = coord(rng);
        if (std::find(pt.begin(), pt.end(), v) == pt.end()) pt.push_back(v);
    }
    return pt;
}

inline Point rational_point(std::size_t m, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
    Point pt;
    while (pt.size() < m) {
        Rational v = make_rational(num(rng), den(rng));
        if (std::find(pt.begin(), pt.end(), v) == pt.end()) pt.push_back(v);
    }
    return pt;
}

/// Random polynomial with up to `terms` terms of total degree exactly `degree`
/// (plus optional lower-degree noise) and small rational coefficients.
inline Polynomial random_polynomial(std::size_t m, std::size_t degree, std::size_t terms, std::mt19937_64& rng,
                                    bool lower_terms = false)
{
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    std::uniform_int_distribution<std::size_t> var(0, m - 1);
    Polynomial p(m);
    for (std::size_t t = 0; t < terms; ++t) {
        std::size_t d = degree;
        if (lower_terms && t % 2 == 1 && degree > 0) d = std::uniform_int_distribution<std::size_t>(0, degree - 1)(rng);
        Monomial mono(m);
        for (std::size_t k = 0; k < d; ++k) ++mono[var(rng)];
        p.add_term(mono, make_rational(num(rng), den(rng)));
    }
    return p;
}

/// Uniform-ish random labelled tree: attach vertex k to an earlier vertex,
/// then relabel with a random permutation.
inline Graph random_tree(std::size_t m, std::mt19937_64& rng)
{
    std::vector<std::size_t> label(m);
    std::iota(label.begin(), label.end(), std::size_t{0});
    std::shuffle(label.begin(), label.end(), rng);
    std::vector<Edge> edges;
    for (std::size_t k = 1; k < m; ++k) {
        const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
        edges.push_back(make_edge(label[k], label[parent]));
    }
    return Graph::from_edges(m, edges);
}

inline Graph random_graph(std::size_t m, double density, std::mt19937_64& rng)
{
    std::bernoulli_distribution keep(density);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (keep(rng)) edges.push_back({i, j});
    return Graph::from_edges(m, edges);
}

/// Random composition of `total` into `parts` nonnegative parts.
inline std::vector<std::uint32_t> random_composition(std::uint32_t total, std::size_t parts, std::mt19937_64& rng)
{
    std::vector<std::uint32_t> c(parts, 0);
    std::uniform_int_distribution<std::size_t> slot(0, parts - 1);
    for (std::uint32_t k = 0; k < total; ++k) ++c[slot(rng)];
    return c;
}

/// All compositions of `total` into `parts` nonnegative parts, lexicographic.
inline std::vector<std::vector<std::uint32_t>> all_compositions(std::uint32_t total, std::size_t parts)
{
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(parts, 0);
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
        if (i + 1 == parts) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t v = left + 1; v-- > 0;) {
            cur[i] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

/// An admissible input for lemma1_vanishes.
struct VanishingInstance {
    Graph g;
    std::vector<Edge> removed;
    std::vector<std::size_t> component;
    Polynomial h;
    std::optional<Polynomial> cofactor;
};

/// Random graph on 2..max_m vertices, a cut isolating a component U, h a
/// non-constant symmetric polynomial in U times a polynomial outside U, and a
/// random cofactor filling the remaining degree budget.
inline VanishingInstance random_lemma1_instance(std::size_t max_m, std::mt19937_64& rng)
{
    require(max_m >= 2, "need at least two vertices");
    while (true) {
        const std::size_t m = std::uniform_int_distribution<std::size_t>(2, max_m)(rng);
        const Graph g = random_graph(m, 0.6, rng);
        std::vector<bool> in_s(m);
        for (std::size_t v = 0; v < m; ++v) in_s[v] = rng() % 2 == 0;
        std::vector<Edge> removed;
        for (const Edge& e : g.edges())
            if (in_s[e.lo] != in_s[e.hi] || rng() % 5 == 0) removed.push_back(e);
        if (removed.size() >= g.edge_count()) continue;
        const std::size_t budget = g.edge_count() - removed.size();

        const auto blocks = components_after_removal(g, removed);
        const auto& u = blocks[rng() % blocks.size()];

        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, budget)(rng);
        std::uniform_int_distribution<long> coef(-4, 4);
        Polynomial power_sum(m), linear(m);
        for (std::size_t v : u) {
            power_sum += pow(Polynomial::variable(m, v), k);
            linear += Polynomial::variable(m, v);
        }
        Polynomial h = power_sum * make_rational(coef(rng), 1) + pow(linear, k) * make_rational(coef(rng), 1);
        if (h.is_zero()) h = power_sum;

        std::vector<std::size_t> outside;
        for (std::size_t v = 0; v < m; ++v)
            if (!std::binary_search(u.begin(), u.end(), v)) outside.push_back(v);
        const std::size_t rest = budget - k;
        std::size_t outer_degree = 0;
        if (!outside.empty() && rest > 0) {
            outer_degree = std::uniform_int_distribution<std::size_t>(0, rest)(rng);
            for (std::size_t t = 0; t < outer_degree; ++t)
                h *= Polynomial::variable(m, outside[rng() % outside.size()]);
        }
        std::optional<Polynomial> cofactor;
        if (rest > outer_degree) cofactor = random_polynomial(m, rest - outer_degree, 3, rng, true);
        return {g, removed, u, h, cofactor};
    }
}

/// An input for check_eq1: two graphs and a polynomial on each.
struct FactorizationInstance {
    Graph gu, gw;
    Polynomial fu, fw;
};

/// Total vertex count at most max_m; occasionally one factor has degree below its edge count.
inline FactorizationInstance random_eq1_instance(std::size_t max_m, std::mt19937_64& rng)
{
    require(max_m >= 2, "need at least two vertices");
    const std::size_t mu = std::uniform_int_distribution<std::size_t>(1, max_m - 1)(rng);
    const std::size_t mw = std::uniform_int_distribution<std::size_t>(1, max_m - mu)(rng);
    FactorizationInstance in{random_graph(mu, 0.7, rng), random_graph(mw, 0.7, rng), Polynomial(mu), Polynomial(mw)};
    std::size_t du = in.gu.edge_count();
    if (du > 0 && rng() % 4 == 0) --du;
    in.fu = random_polynomial(mu, du, 3, rng);
    in.fw = random_polynomial(mw, in.gw.edge_count(), 3, rng);
    return in;
}

} // namespace divsym::instances
