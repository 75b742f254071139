#pragma once

/**
 * @file divided_symmetrization.hpp
 * @brief Exact divided symmetrization DS_G(f) for deg f <= |E(G)|.
 *
 * DS_G(f) = sum over all permutations pi of
 *     f(x_{pi(0)}, ..., x_{pi(m-1)}) / prod_{(i,j) in E} (x_{pi(i)} - x_{pi(j)}).
 *
 * When deg f <= |E| the sum is a constant polynomial, so a single exact
 * evaluation at a point with pairwise distinct coordinates determines it.
 * The engine therefore enumerates the m! permutations of an evaluation point
 * and sums exact scalars, instead of manipulating rational functions.
 *
 * Permutations are visited in lexicographic order and split into contiguous
 * chunks, one per worker. Each worker owns its accumulator; the partial sums
 * are combined in chunk order, so the result does not depend on worker count.
 */

#include "divsym/error.hpp"
#include "divsym/graph.hpp"
#include "divsym/polynomial.hpp"
#include "divsym/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace divsym {

struct EngineOptions {
    /// Largest vertex count accepted; the engine visits m! permutations.
    std::size_t max_vertices = 10;
    /// Worker threads for the permutation sum; 0 picks hardware concurrency.
    unsigned workers = 0;
};

namespace detail {

inline unsigned resolve_workers(unsigned requested, std::uint64_t work_items)
{
    unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    // Thread start-up dwarfs sums this small.
    if (work_items < 5040) w = 1;
    return static_cast<unsigned>(std::min<std::uint64_t>(w, work_items));
}

inline std::uint64_t factorial_u64(std::size_t m)
{
    std::uint64_t r = 1;
    for (std::size_t i = 2; i <= m; ++i) r *= i;
    return r;
}

/// The rank-th permutation of 0..m-1 in lexicographic order.
inline std::vector<std::size_t> unrank_permutation(std::size_t m, std::uint64_t rank)
{
    std::vector<std::size_t> pool(m);
    for (std::size_t i = 0; i < m; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(m);
    for (std::size_t i = m; i > 0; --i) {
        const std::uint64_t block = factorial_u64(i - 1);
        const std::size_t idx = static_cast<std::size_t>(rank / block);
        rank %= block;
        out.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return out;
}

inline bool mul_small(std::int64_t a, std::int64_t b, std::int64_t& out)
{
    return !__builtin_mul_overflow(a, b, &out);
}

/// One term of f with its variables' nonzero exponents listed explicitly.
struct FlatTerm {
    std::vector<std::pair<std::size_t, std::uint32_t>> factors;
    Integer coef;          // f's coefficient times the common denominator
    std::int64_t small = 0;
    bool fits = false;
};

/**
 * Sums f(pt∘pi)/den(pi) over permutations with ranks in [first, last).
 *
 * Integral points take a checked 64-bit fast path per permutation and drop to
 * GMP integers only for the permutations that overflow it.
 */
class PermutationSummer {
public:
    PermutationSummer(const Polynomial& f, std::span<const Edge> factors, const Point& pt)
        : m_(pt.size()), factors_(factors.begin(), factors.end()), pt_(pt)
    {
        integral_ = std::all_of(pt.begin(), pt.end(), [](const Rational& q) { return q.get_den() == 1; });

        denom_ = 1;
        for (const auto& [mono, coef] : f.terms()) mpz_lcm(denom_.get_mpz_t(), denom_.get_mpz_t(), coef.get_den_mpz_t());

        std::uint32_t max_exp = 0;
        for (const auto& [mono, coef] : f.terms()) {
            FlatTerm t;
            for (std::size_t i = 0; i < mono.size(); ++i) {
                if (mono[i] == 0) continue;
                t.factors.emplace_back(i, mono[i]);
                max_exp = std::max(max_exp, mono[i]);
            }
            Rational scaled = coef * Rational(denom_);
            t.coef = scaled.get_num();
            t.fits = t.coef.fits_slong_p();
            if (t.fits) t.small = t.coef.get_si();
            terms_.push_back(std::move(t));
            rational_coefs_.push_back(coef);
        }

        // powers_[k][e] = pt[k]^e; exponent 1 is always present for the edge factors.
        max_exp = std::max<std::uint32_t>(max_exp, 1);
        powers_.assign(m_, std::vector<Rational>(max_exp + 1));
        int_powers_.assign(m_, std::vector<Integer>(max_exp + 1));
        small_powers_.assign(m_, std::vector<std::int64_t>(max_exp + 1, 0));
        small_power_ok_.assign(m_, std::vector<bool>(max_exp + 1, false));
        for (std::size_t k = 0; k < m_; ++k) {
            powers_[k][0] = 1;
            for (std::uint32_t e = 1; e <= max_exp; ++e) powers_[k][e] = powers_[k][e - 1] * pt[k];
            if (!integral_) continue;
            for (std::uint32_t e = 0; e <= max_exp; ++e) {
                int_powers_[k][e] = powers_[k][e].get_num();
                small_power_ok_[k][e] = int_powers_[k][e].fits_slong_p();
                if (small_power_ok_[k][e]) small_powers_[k][e] = int_powers_[k][e].get_si();
            }
        }
        if (integral_) {
            small_pt_ok_ = std::all_of(pt.begin(), pt.end(), [](const Rational& q) {
                return q.get_num().fits_slong_p() && q.get_num() < (Integer(1) << 61) &&
                       q.get_num() > -(Integer(1) << 61);
            });
        }
    }

    Rational sum(std::uint64_t first, std::uint64_t last) const
    {
        Rational acc = 0;
        if (first >= last) return acc;
        std::vector<std::size_t> perm = unrank_permutation(m_, first);
        Rational scratch;
        for (std::uint64_t r = first; r < last; ++r) {
            if (integral_) add_integral(perm, acc, scratch);
            else add_rational(perm, acc);
            std::next_permutation(perm.begin(), perm.end());
        }
        return acc;
    }

    const Integer& denominator_scale() const { return denom_; }
    bool integral() const { return integral_; }

private:
    void add_integral(const std::vector<std::size_t>& perm, Rational& acc, Rational& scratch) const
    {
        Integer num = numerator_at(perm);
        if (num == 0) return;
        Integer den = denominator_at(perm);
        mpq_set_num(scratch.get_mpq_t(), num.get_mpz_t());
        mpq_set_den(scratch.get_mpq_t(), den.get_mpz_t());
        scratch.canonicalize();
        acc += scratch;
    }

    Integer numerator_at(const std::vector<std::size_t>& perm) const
    {
        std::int64_t total = 0;
        bool ok = true;
        for (const FlatTerm& t : terms_) {
            if (!t.fits) {
                ok = false;
                break;
            }
            std::int64_t v = t.small;
            for (const auto& [var, e] : t.factors) {
                const std::size_t k = perm[var];
                if (!small_power_ok_[k][e] || !mul_small(v, small_powers_[k][e], v)) {
                    ok = false;
                    break;
                }
            }
            if (!ok || __builtin_add_overflow(total, v, &total)) {
                ok = false;
                break;
            }
        }
        if (ok) return Integer(static_cast<long>(total));

        Integer big = 0;
        Integer v;
        for (const FlatTerm& t : terms_) {
            v = t.coef;
            for (const auto& [var, e] : t.factors) v *= int_powers_[perm[var]][e];
            big += v;
        }
        return big;
    }

    Integer denominator_at(const std::vector<std::size_t>& perm) const
    {
        if (small_pt_ok_) {
            std::int64_t prod = 1;
            bool ok = true;
            for (const Edge& e : factors_) {
                const std::int64_t diff = small_powers_[perm[e.lo]][1] - small_powers_[perm[e.hi]][1];
                if (!mul_small(prod, diff, prod)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return Integer(static_cast<long>(prod));
        }
        Integer prod = 1;
        for (const Edge& e : factors_) prod *= int_powers_[perm[e.lo]][1] - int_powers_[perm[e.hi]][1];
        return prod;
    }

    void add_rational(const std::vector<std::size_t>& perm, Rational& acc) const
    {
        Rational num = 0;
        Rational v;
        std::size_t idx = 0;
        for (const FlatTerm& t : terms_) {
            v = rational_coefs_[idx++];
            for (const auto& [var, e] : t.factors) v *= powers_[perm[var]][e];
            num += v;
        }
        if (num == 0) return;
        Rational den = 1;
        for (const Edge& e : factors_) den *= pt_[perm[e.lo]] - pt_[perm[e.hi]];
        acc += num / den;
    }

    std::size_t m_;
    std::vector<Edge> factors_;
    Point pt_;
    bool integral_ = false;
    bool small_pt_ok_ = false;
    Integer denom_;
    std::vector<FlatTerm> terms_;
    std::vector<Rational> rational_coefs_;
    std::vector<std::vector<Rational>> powers_;
    std::vector<std::vector<Integer>> int_powers_;
    std::vector<std::vector<std::int64_t>> small_powers_;
    std::vector<std::vector<bool>> small_power_ok_;
};

} // namespace detail

/// (1, 2, ..., m): small distinct integers keep intermediate sizes modest.
inline Point default_point(std::size_t m)
{
    Point pt(m);
    for (std::size_t i = 0; i < m; ++i) pt[i] = static_cast<long>(i + 1);
    return pt;
}

inline bool has_distinct_coordinates(std::span<const Rational> pt)
{
    std::vector<Rational> sorted(pt.begin(), pt.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

/**
 * DS of f against an arbitrary multiset of edge factors (x_lo - x_hi).
 *
 * This is the general form behind ds_constant; it also admits repeated
 * factors, which the two-vertex cycle needs.
 */
inline Rational ds_constant_factors(const Polynomial& f, std::size_t m, std::span<const Edge> factors,
                                    const Point& pt, const EngineOptions& opts = {})
{
    require(m >= 1, "divided symmetrization needs at least one variable");
    require(f.variables() == m, "polynomial has " + std::to_string(f.variables()) +
                                    " variables but the graph has " + std::to_string(m) + " vertices");
    require(pt.size() == m, "evaluation point has the wrong length");
    for (const Edge& e : factors) require(e.lo < m && e.hi < m && e.lo != e.hi, "bad edge factor");
    const auto deg = f.degree();
    require(!deg || *deg <= factors.size(),
            "degree " + std::to_string(deg.value_or(0)) + " exceeds edge count " +
                std::to_string(factors.size()) + "; the result would not be constant");
    require(has_distinct_coordinates(pt), "evaluation point coordinates are not pairwise distinct");
    if (m > opts.max_vertices || m > 20) {
        throw cap_exceeded("permutation sum over " + std::to_string(m) + "! terms exceeds the cap of " +
                           std::to_string(opts.max_vertices) + " vertices");
    }
    if (f.is_zero()) return 0;

    const detail::PermutationSummer summer(f, factors, pt);
    const std::uint64_t total = detail::factorial_u64(m);
    const unsigned workers = detail::resolve_workers(opts.workers, total);

    std::vector<Rational> partial(workers);
    if (workers == 1) {
        partial[0] = summer.sum(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = total * w / workers;
            const std::uint64_t last = total * (w + 1) / workers;
            pool.emplace_back([&summer, &partial, w, first, last] { partial[w] = summer.sum(first, last); });
        }
        for (auto& t : pool) t.join();
    }

    Rational result = 0;
    for (const Rational& p : partial) result += p;
    if (summer.integral()) result /= Rational(summer.denominator_scale());
    return result;
}

inline Rational ds_constant(const Polynomial& f, const Graph& g, const Point& pt, const EngineOptions& opts = {})
{
    return ds_constant_factors(f, g.vertices(), g.edges(), pt, opts);
}

inline Rational ds_constant(const Polynomial& f, const Graph& g, const EngineOptions& opts = {})
{
    return ds_constant(f, g, default_point(g.vertices()), opts);
}

/// Evaluates at two points and insists they agree.
inline Rational ds_constant_verified(const Polynomial& f, const Graph& g, const Point& pt, const Point& check_pt,
                                     const EngineOptions& opts = {})
{
    Rational a = ds_constant(f, g, pt, opts);
    Rational b = ds_constant(f, g, check_pt, opts);
    if (a != b) {
        throw verification_failure("divided symmetrization differs between evaluation points: " + to_string(a) +
                                   " vs " + to_string(b));
    }
    return a;
}

/// Multiplies f by every non-edge factor and symmetrizes over the complete graph.
inline Rational ds_via_complete(const Polynomial& f, const Graph& g, const EngineOptions& opts = {})
{
    const std::size_t m = g.vertices();
    require(f.variables() == m, "polynomial and graph disagree on the vertex count");
    const auto deg = f.degree();
    require(!deg || *deg <= g.edge_count(), "degree exceeds edge count");
    Polynomial lifted = f;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (g.has_edge({i, j})) continue;
            lifted *= Polynomial::variable(m, i) - Polynomial::variable(m, j);
        }
    }
    return ds_constant(lifted, complete_graph(m), opts);
}

struct IdentitySides {
    Rational lhs;
    Rational rhs;

    bool holds() const { return lhs == rhs; }
};

/**
 * Factorization over a disconnected graph G = GU ⊔ GW.
 *
 * f_u lives on GU's local variables and f_w on GW's; GU occupies vertices
 * 0..|U|-1 of the union and GW the rest. lhs symmetrizes the product over the
 * union. rhs is binom(m,|U|)·DS_GU(f_u)·DS_GW(f_w) when each factor's degree
 * equals its edge count, and 0 otherwise (one factor then symmetrizes to 0).
 */
inline IdentitySides check_eq1(const Polynomial& f_u, const Polynomial& f_w, const Graph& g_u, const Graph& g_w,
                               const EngineOptions& opts = {})
{
    require(f_u.variables() == g_u.vertices() && f_w.variables() == g_w.vertices(),
            "factor polynomials must match their component graphs");
    require(g_u.vertices() >= 1 && g_w.vertices() >= 1, "both components need at least one vertex");
    const std::size_t m = g_u.vertices() + g_w.vertices();

    IdentitySides sides;
    if (f_u.is_zero() || f_w.is_zero()) {
        sides.lhs = 0;
        sides.rhs = 0;
        return sides;
    }
    const std::size_t du = *f_u.degree(), dw = *f_w.degree();
    require(du + dw <= g_u.edge_count() + g_w.edge_count(), "degree of the product exceeds the edge count");

    const Polynomial product = embed(f_u, m, 0) * embed(f_w, m, g_u.vertices());
    sides.lhs = ds_constant(product, disjoint_union(g_u, g_w), opts);

    if (du == g_u.edge_count() && dw == g_w.edge_count()) {
        sides.rhs = Rational(binomial(m, g_u.vertices())) * ds_constant(f_u, g_u, opts) * ds_constant(f_w, g_w, opts);
    } else {
        sides.rhs = 0;
    }
    return sides;
}

/// True when p is unchanged by every adjacent transposition inside `block`.
inline bool is_symmetric_in(const Polynomial& p, std::vector<std::size_t> block)
{
    std::sort(block.begin(), block.end());
    for (std::size_t k = 0; k + 1 < block.size(); ++k) {
        const Permutation swap = Permutation::transposition(p.variables(), block[k], block[k + 1]);
        if (permute_variables(p, swap) != p) return false;
    }
    return true;
}

/**
 * Builds f = h · prod_{(i,j) in removed} (x_i - x_j) · cofactor and returns
 * DS_G(f). When h is symmetric in a connected component U of G minus
 * `removed`, the result is 0; callers assert that.
 */
inline Rational lemma1_vanishes(const Polynomial& h, const std::vector<Edge>& removed,
                                const std::vector<std::size_t>& component, const Graph& g,
                                const std::optional<Polynomial>& cofactor = std::nullopt,
                                const EngineOptions& opts = {})
{
    const std::size_t m = g.vertices();
    require(h.variables() == m, "h must live on the graph's variables");
    const auto blocks = components_after_removal(g, removed);
    std::vector<std::size_t> sorted_u = component;
    std::sort(sorted_u.begin(), sorted_u.end());
    require(std::find(blocks.begin(), blocks.end(), sorted_u) != blocks.end(),
            "U is not a connected component of the graph with the removed edges deleted");
    require(is_symmetric_in(h, sorted_u), "h is not symmetric in the variables of U");
    require(h.is_zero() || *h.degree() >= 1, "h must be non-constant");

    Polynomial f = h;
    for (const Edge& e : removed) f *= Polynomial::variable(m, e.lo) - Polynomial::variable(m, e.hi);
    if (cofactor) {
        require(cofactor->variables() == m, "cofactor must live on the graph's variables");
        f *= *cofactor;
    }
    const auto deg = f.degree();
    require(!deg || *deg <= g.edge_count(), "degree of h times the removed edge factors exceeds |E|");
    return ds_constant(f, g, opts);
}

} // namespace divsym
