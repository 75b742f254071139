#pragma once

/**
 * @file tree.hpp
 * @brief Weights, edge orientations and acceptable-permutation counts on trees.
 *
 * A monomial C = prod_v x_v^{w(v)+1} of degree m-1 on a tree with m vertices
 * gives every vertex a weight w(v) >= -1 with total -1. Deleting a tree edge
 * (x, y), x < y, splits the weight into two integer parts of which exactly one
 * is negative. The edge is regular when that negative side contains y, and
 * inversive otherwise.
 *
 * A permutation pi is acceptable when pi(x) < pi(y) holds exactly on the
 * regular edges; the oriented tree is then a poset and acceptable permutations
 * are its linear extensions. The signed count
 *     tau(C) = (-1)^{#inversive} * #acceptable
 * equals DS_T(C).
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
#include <string>
#include <thread>
#include <vector>

namespace divsym {

class WeightAssignment {
public:
    WeightAssignment() = default;

    explicit WeightAssignment(std::vector<long> weights) : w_(std::move(weights))
    {
        require(!w_.empty(), "weight assignment is empty");
        long total = 0;
        for (long v : w_) {
            require(v >= -1, "weights must be at least -1");
            total += v;
        }
        require(total == -1, "weights must sum to -1 (got " + std::to_string(total) + ")");
    }

    /// Weight of each vertex is its exponent minus one.
    static WeightAssignment from_monomial(const Monomial& c)
    {
        std::vector<long> w(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) w[i] = static_cast<long>(c[i]) - 1;
        return WeightAssignment(std::move(w));
    }

    /// x^{m-1} at vertex `v`: weight m-2 there and -1 elsewhere.
    static WeightAssignment concentrated(std::size_t m, std::size_t v)
    {
        require(v < m, "vertex out of range");
        std::vector<long> w(m, -1);
        w[v] = static_cast<long>(m) - 2;
        return WeightAssignment(std::move(w));
    }

    std::size_t size() const { return w_.size(); }
    long operator[](std::size_t v) const { return w_[v]; }
    const std::vector<long>& values() const { return w_; }

    Monomial monomial() const
    {
        Monomial c(w_.size());
        for (std::size_t i = 0; i < w_.size(); ++i) c[i] = static_cast<Monomial::exponent_type>(w_[i] + 1);
        return c;
    }

private:
    std::vector<long> w_;
};

enum class EdgeKind { regular, inversive };

struct EdgeClassification {
    std::vector<Edge> edges;   // same order as Tree::edges()
    std::vector<EdgeKind> kinds;
    int sign = 1;

    bool regular(std::size_t k) const { return kinds[k] == EdgeKind::regular; }

    std::size_t inversive_count() const
    {
        return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), EdgeKind::inversive));
    }
};

inline EdgeClassification classify_edges(const Tree& t, const WeightAssignment& w)
{
    require(w.size() == t.vertices(), "weight assignment does not match the tree size");
    EdgeClassification cls;
    cls.edges = t.edges();
    for (const Edge& e : t.edges()) {
        const auto blocks = components_after_removal(t.graph(), {e});
        long sums[2] = {0, 0};
        bool hi_in_first = false;
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t v : blocks[b]) {
                sums[b] += w[v];
                if (v == e.hi && b == 0) hi_in_first = true;
            }
        }
        // Totals are integers adding to -1, so exactly one side is negative.
        if ((sums[0] < 0) == (sums[1] < 0)) {
            throw verification_failure("edge split without exactly one negative side");
        }
        const std::size_t negative = sums[0] < 0 ? 0 : 1;
        const bool negative_has_hi = (negative == 0) == hi_in_first;
        cls.kinds.push_back(negative_has_hi ? EdgeKind::regular : EdgeKind::inversive);
    }
    cls.sign = cls.inversive_count() % 2 == 0 ? 1 : -1;
    return cls;
}

/// True when pi (pi[v] = position of v) respects every edge orientation.
inline bool is_acceptable(const EdgeClassification& cls, std::span<const std::size_t> pi)
{
    for (std::size_t k = 0; k < cls.edges.size(); ++k) {
        const Edge& e = cls.edges[k];
        if ((pi[e.lo] < pi[e.hi]) != cls.regular(k)) return false;
    }
    return true;
}

/// Counts acceptable permutations by enumerating all m! of them.
inline Integer acceptable_count_bruteforce(const Tree& t, const EdgeClassification& cls,
                                           const EngineOptions& opts = {})
{
    const std::size_t m = t.vertices();
    require(cls.edges == t.edges(), "classification belongs to a different tree");
    if (m > opts.max_vertices || m > 20) {
        throw cap_exceeded("brute-force count over " + std::to_string(m) + "! permutations exceeds the cap");
    }
    const std::uint64_t total = detail::factorial_u64(m);
    const unsigned workers = detail::resolve_workers(opts.workers, total);

    auto count_range = [&](std::uint64_t first, std::uint64_t last) {
        std::uint64_t hits = 0;
        if (first >= last) return hits;
        std::vector<std::size_t> perm = detail::unrank_permutation(m, first);
        for (std::uint64_t r = first; r < last; ++r) {
            if (is_acceptable(cls, perm)) ++hits;
            std::next_permutation(perm.begin(), perm.end());
        }
        return hits;
    };

    std::vector<std::uint64_t> partial(workers, 0);
    if (workers == 1) {
        partial[0] = count_range(0, total);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { partial[w] = count_range(total * w / workers, total * (w + 1) / workers); });
        }
        for (auto& th : pool) th.join();
    }
    Integer sum = 0;
    for (std::uint64_t p : partial) sum += Integer(static_cast<unsigned long>(p));
    return sum;
}

/**
 * Counts acceptable permutations in O(m^2) big-integer operations.
 *
 * Root the tree at vertex 0. For each subtree, ranks[k] counts the relative
 * orders of its vertices that respect the subtree's edges and put the subtree
 * root at rank k (0-based). Attaching a child subtree interleaves the two
 * orders; with the root at merged rank k, i of the root's own vertices before
 * it and j = k - i child vertices before it, there are C(k, i) * C(s+c-1-k,
 * s-1-i) interleavings, and the child root must land on the required side of
 * the root (after it iff the child root's own rank is at least j).
 */
inline Integer acceptable_count_fast(const Tree& t, const EdgeClassification& cls)
{
    const std::size_t m = t.vertices();
    require(cls.edges == t.edges(), "classification belongs to a different tree");

    std::vector<std::vector<Integer>> binom(m + 1);
    for (std::size_t n = 0; n <= m; ++n) {
        binom[n].assign(n + 1, 1);
        for (std::size_t k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
    }
    auto choose = [&](std::size_t n, std::size_t k) -> const Integer& { return binom[n][k]; };

    // DFS from vertex 0; parent[0] == 0 marks the root.
    const auto adj = t.graph().adjacency();
    std::vector<std::size_t> parent(m, m), order;
    order.reserve(m);
    std::vector<std::size_t> stack{0};
    parent[0] = 0;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (std::size_t u : adj[v]) {
            if (parent[u] != m) continue;
            parent[u] = v;
            stack.push_back(u);
        }
    }

    auto parent_first = [&](std::size_t child) {
        const Edge e = make_edge(parent[child], child);
        const auto it = std::lower_bound(cls.edges.begin(), cls.edges.end(), e);
        const bool regular = cls.regular(static_cast<std::size_t>(it - cls.edges.begin()));
        // Regular: pi(lo) < pi(hi).
        return regular == (e.lo == parent[child]);
    };

    std::vector<std::vector<Integer>> ranks(m);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t v = *it;
        std::vector<Integer> cur{Integer(1)};
        for (std::size_t c : adj[v]) {
            if (c == 0 || parent[c] != v) continue;
            const std::vector<Integer>& child = ranks[c];
            const std::size_t s = cur.size(), cs = child.size();
            // before[j] = number of child orders with the child root at rank < j.
            std::vector<Integer> before(cs + 1, 0);
            for (std::size_t j = 0; j < cs; ++j) before[j + 1] = before[j] + child[j];
            const bool root_first = parent_first(c);

            std::vector<Integer> merged(s + cs, 0);
            Integer term, ways;
            for (std::size_t i = 0; i < s; ++i) {
                if (cur[i] == 0) continue;
                for (std::size_t j = 0; j <= cs; ++j) {
                    // j child vertices precede the root; the child root precedes
                    // the root iff its own rank is below j.
                    if (root_first) ways = before[cs] - before[j];
                    else ways = before[j];
                    if (ways == 0) continue;
                    const std::size_t k = i + j;
                    term = cur[i] * ways;
                    term *= choose(k, i);
                    term *= choose(s + cs - 1 - k, s - 1 - i);
                    merged[k] += term;
                }
            }
            cur = std::move(merged);
            ranks[c].clear();
        }
        ranks[v] = std::move(cur);
    }

    Integer total = 0;
    for (const Integer& r : ranks[0]) total += r;
    return total;
}

enum class CountMethod { brute, fast };

struct TauResult {
    int sign = 1;
    Integer count;
    Integer tau;
};

inline TauResult tau(const Tree& t, const WeightAssignment& w, CountMethod method = CountMethod::fast,
                     const EngineOptions& opts = {})
{
    const EdgeClassification cls = classify_edges(t, w);
    TauResult r;
    r.sign = cls.sign;
    r.count = method == CountMethod::fast ? acceptable_count_fast(t, cls) : acceptable_count_bruteforce(t, cls, opts);
    r.tau = r.count * cls.sign;
    return r;
}

/// A permutation (values[v] = pi(v)) together with a marked vertex.
struct PointedPermutation {
    std::vector<std::size_t> values;
    std::size_t point = 0;

    friend bool operator==(const PointedPermutation&, const PointedPermutation&) = default;
};

/**
 * Membership in the pointed family counted by |tau(x^{m-1})|: pi(x) is the
 * largest value, and pi(u) > pi(v) on every edge uv whose endpoint u lies on
 * v's path to x.
 */
inline bool is_pointed_acceptable(const Tree& t, const PointedPermutation& p)
{
    const std::size_t m = t.vertices();
    if (p.values.size() != m || p.point >= m) return false;
    std::vector<bool> seen(m, false);
    for (std::size_t v : p.values) {
        if (v >= m || seen[v]) return false;
        seen[v] = true;
    }
    if (p.values[p.point] != m - 1) return false;

    const auto adj = t.graph().adjacency();
    std::vector<bool> visited(m, false);
    std::vector<std::size_t> stack{p.point};
    visited[p.point] = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u]) {
            if (visited[v]) continue;
            if (p.values[u] < p.values[v]) return false;
            visited[v] = true;
            stack.push_back(v);
        }
    }
    return true;
}

/// All permutations pointed by x in the family above.
inline std::vector<PointedPermutation> pointed_permutations(const Tree& t, std::size_t x)
{
    const std::size_t m = t.vertices();
    require(x < m, "vertex out of range");
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<PointedPermutation> out;
    do {
        PointedPermutation p{perm, x};
        if (is_pointed_acceptable(t, p)) out.push_back(std::move(p));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Sign attached to a permutation pointed by x: the sign of the monomial x^{m-1}.
inline int pointed_sign(const Tree& t, std::size_t x)
{
    return classify_edges(t, WeightAssignment::concentrated(t.vertices(), x)).sign;
}

/**
 * Swaps the two largest values: the vertex y holding m-2 is a neighbour of the
 * point x; it receives m-1, x receives m-2, and y becomes the new point.
 */
inline PointedPermutation pointed_involution(const PointedPermutation& p, const Tree& t)
{
    const std::size_t m = t.vertices();
    require(m >= 2, "the involution needs at least two vertices");
    require(is_pointed_acceptable(t, p), "permutation is not acceptable for its point");
    const std::size_t x = p.point;
    const auto y_it = std::find(p.values.begin(), p.values.end(), m - 2);
    const std::size_t y = static_cast<std::size_t>(y_it - p.values.begin());
    require(t.graph().has_edge(make_edge(x, y)), "second-largest value is not next to the point");

    PointedPermutation q = p;
    q.values[x] = m - 2;
    q.values[y] = m - 1;
    q.point = y;
    return q;
}

} // namespace divsym
