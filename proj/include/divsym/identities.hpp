#pragma once

/**
 * @file identities.hpp
 * @brief Closed forms and identities for Φ = DS over a path, and their cycle analogues.
 *
 * Throughout, Φ(f) is the divided symmetrization of f over the path
 * 0 - 1 - ... - n, and y_i = x_0 + ... + x_i. On a cycle of m = n + d vertices
 * the vertices are numbered counter-clockwise, so walking clockwise means
 * decreasing the index modulo m.
 */

#include "divsym/divided_symmetrization.hpp"
#include "divsym/error.hpp"
#include "divsym/graph.hpp"
#include "divsym/polynomial.hpp"
#include "divsym/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace divsym {

/// Φ(f) over path_graph(f.variables()).
inline Rational phi(const Polynomial& f, const EngineOptions& opts = {})
{
    return ds_constant(f, path_graph(f.variables()), opts);
}

/// (-1)^i * C(n, i).
inline Rational lemma2_value(std::size_t i, std::size_t n)
{
    require(i <= n, "index " + std::to_string(i) + " exceeds n = " + std::to_string(n));
    Integer v = binomial(n, i);
    if (i % 2 == 1) v = -v;
    return Rational(v);
}

/// Φ(y_0 y_1 ... y_{n-1}) against n!.
inline IdentitySides verify_eq2(std::size_t n, const EngineOptions& opts = {})
{
    require(n >= 1, "n must be at least 1");
    std::vector<std::uint32_t> c(n + 1, 1);
    c[n] = 0;
    return {phi(prefix_sum_monomial(c), opts), Rational(factorial(n))};
}

namespace detail {

inline std::size_t check_composition(std::span<const std::uint32_t> c)
{
    require(!c.empty(), "exponent sequence must be non-empty");
    const std::size_t total = std::accumulate(c.begin(), c.end(), std::size_t{0});
    require(total + 1 == c.size(),
            "exponents must sum to n for n+1 variables (got sum " + std::to_string(total) + " over " +
                std::to_string(c.size()) + " variables)");
    return total;
}

} // namespace detail

/// Σ over cyclic shifts σ of Φ(∏_j y_j^{c_{j+σ}}) against n!.
inline IdentitySides postnikov_check(std::span<const std::uint32_t> c, const EngineOptions& opts = {})
{
    const std::size_t n = detail::check_composition(c);
    const std::size_t m = n + 1;
    Rational lhs = 0;
    std::vector<std::uint32_t> shifted(m);
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t j = 0; j < m; ++j) shifted[j] = c[(j + s) % m];
        lhs += phi(prefix_sum_monomial(shifted), opts);
    }
    return {lhs, Rational(factorial(n))};
}

inline Rational q_residual(std::span<const std::uint32_t> c, const EngineOptions& opts = {})
{
    const IdentitySides s = postnikov_check(c, opts);
    return s.lhs - s.rhs;
}

/// 2Q(c) - Q(coin of vertex i moved left) - Q(coin of vertex i moved right).
inline Rational q_relation_check(std::span<const std::uint32_t> c, std::size_t i, const EngineOptions& opts = {})
{
    detail::check_composition(c);
    const std::size_t m = c.size();
    require(i < m, "vertex out of range");
    require(c[i] >= 2, "vertex " + std::to_string(i) + " needs at least two coins");
    std::vector<std::uint32_t> left(c.begin(), c.end()), right(c.begin(), c.end());
    --left[i];
    ++left[(i + m - 1) % m];
    --right[i];
    ++right[(i + 1) % m];
    return 2 * q_residual(c, opts) - q_residual(left, opts) - q_residual(right, opts);
}

/// Sorted, duplicate-free, non-empty subset of 0..m-1.
inline std::vector<std::size_t> validate_empty_set(std::vector<std::size_t> p, std::size_t m)
{
    require(!p.empty(), "the empty-vertex set must be non-empty");
    std::sort(p.begin(), p.end());
    require(std::adjacent_find(p.begin(), p.end()) == p.end(), "duplicate vertex in empty-vertex set");
    require(p.back() < m, "empty-vertex set has a vertex out of range");
    return p;
}

/// Product of the arc sizes into which P cuts the m-cycle.
inline Integer group_weight(const std::vector<std::size_t>& p_in, std::size_t m)
{
    const auto p = validate_empty_set(p_in, m);
    Integer w = 1;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) w *= static_cast<unsigned long>(p[k + 1] - p[k]);
    w *= static_cast<unsigned long>(p.front() + m - p.back());
    return w;
}

/// z_i: sum of x_j walking clockwise from i up to (excluding) the first P-vertex; 1 on P.
inline std::vector<Polynomial> z_forms(const std::vector<std::size_t>& p_in, std::size_t m)
{
    const auto p = validate_empty_set(p_in, m);
    std::vector<bool> in_p(m, false);
    for (std::size_t v : p) in_p[v] = true;
    std::vector<Polynomial> z;
    z.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (in_p[i]) {
            z.push_back(Polynomial::constant(m, 1));
            continue;
        }
        std::vector<std::size_t> arc;
        for (std::size_t j = i; !in_p[j]; j = (j + m - 1) % m) arc.push_back(j);
        z.push_back(variable_sum(m, arc));
    }
    return z;
}

/// ∏_{p∈P}(x_{p+1} - x_p) · ∏_i z_i^{c_i}, indices mod m.
inline Polynomial cycle_integrand(std::span<const std::uint32_t> c, const std::vector<std::size_t>& p)
{
    const std::size_t m = c.size();
    Polynomial f = Polynomial::constant(m, 1);
    for (std::size_t v : validate_empty_set(p, m))
        f *= Polynomial::variable(m, (v + 1) % m) - Polynomial::variable(m, v);
    const auto z = z_forms(p, m);
    for (std::size_t i = 0; i < m; ++i)
        if (c[i] > 0) f *= pow(z[i], c[i]);
    return f;
}

namespace detail {

inline std::size_t check_cycle_config(std::span<const std::uint32_t> c, std::size_t d)
{
    const std::size_t m = c.size();
    require(m >= 3, "the cycle formula needs at least three vertices");
    const std::size_t n = std::accumulate(c.begin(), c.end(), std::size_t{0});
    require(d >= 1 && n + d == m,
            "coin total " + std::to_string(n) + " plus d = " + std::to_string(d) + " must equal " + std::to_string(m));
    return n;
}

} // namespace detail

/**
 * Sign relating the literal cycle integrand to the arc-wise path convention.
 *
 * Each factor (x_{p+1} - x_p) with p < m-1 cancels a normalized edge
 * (x_p - x_{p+1}) with sign -1, the factor for p = m-1 cancels the wrap edge
 * (x_0 - x_{m-1}) with sign +1, and an arc that keeps the wrap edge as an inner
 * edge contributes one more -1 when relabelled as a path. Either way the total
 * is (-1)^(d-1).
 */
inline int cycle_orientation_sign(std::size_t d)
{
    return d % 2 == 1 ? 1 : -1;
}

namespace detail {

inline Rational weighted_cycle_ds(std::span<const std::uint32_t> c, const std::vector<std::size_t>& p,
                                  const EngineOptions& opts)
{
    const std::size_t m = c.size();
    return cycle_orientation_sign(p.size()) * Rational(group_weight(p, m)) *
           ds_constant(cycle_integrand(c, p), cycle_graph(m), opts);
}

} // namespace detail

/// (-1)^(d-1)·w(P)/m! · DS over the m-cycle: the probability that exactly P ends up empty.
inline Rational prob_empty_set_formula(std::span<const std::uint32_t> c, const std::vector<std::size_t>& p,
                                       const EngineOptions& opts = {})
{
    const std::size_t m = c.size();
    require(m >= 3, "the cycle formula needs at least three vertices");
    const auto sorted = validate_empty_set(p, m);
    detail::check_cycle_config(c, sorted.size());
    return detail::weighted_cycle_ds(c, sorted, opts) / Rational(factorial(m));
}

/// All d-element subsets of 0..m-1 in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t m, std::size_t d)
{
    std::vector<std::vector<std::size_t>> out;
    if (d > m) return out;
    std::vector<std::size_t> cur(d);
    std::iota(cur.begin(), cur.end(), std::size_t{0});
    while (true) {
        out.push_back(cur);
        std::size_t k = d;
        while (k > 0 && cur[k - 1] == m - d + (k - 1)) --k;
        if (k == 0) break;
        ++cur[k - 1];
        for (std::size_t j = k; j < d; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Σ_P (-1)^(d-1)·w(P)·DS(∏(x_{p+1}-x_p)·h(z^P)) against m!·h(1,...,1) for the monomial h = ∏ t_i^{c_i}.
inline IdentitySides cycle_identity_check(std::span<const std::uint32_t> c, std::size_t d,
                                          const EngineOptions& opts = {})
{
    detail::check_cycle_config(c, d);
    const std::size_t m = c.size();
    Rational lhs = 0;
    for (const auto& p : subsets_of_size(m, d)) lhs += detail::weighted_cycle_ds(c, p, opts);
    return {lhs, Rational(factorial(m))};
}

} // namespace divsym
