#pragma once

/**
 * @file graph.hpp
 * @brief Ordered-vertex simple graphs, trees, paths and cycles.
 *
 * Vertices are 0..m-1 and the index order is the variable order. Edges are
 * stored normalized as (lo, hi) with lo < hi; the matching denominator factor
 * in a divided symmetrization is (x_lo - x_hi).
 */

#include "divsym/error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace divsym {

struct Edge {
    std::size_t lo = 0;
    std::size_t hi = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(std::size_t a, std::size_t b)
{
    require(a != b, "self-loop at vertex " + std::to_string(a));
    return a < b ? Edge{a, b} : Edge{b, a};
}

class Graph {
public:
    Graph() = default;

    /// Accepts pairs in either order; rejects loops, duplicates and bad endpoints.
    Graph(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
        : m_(vertices)
    {
        std::set<Edge> seen;
        for (const auto& [a, b] : pairs) {
            require(a < m_ && b < m_, "edge endpoint out of range");
            const Edge e = make_edge(a, b);
            require(seen.insert(e).second,
                    "duplicate edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ")");
        }
        edges_.assign(seen.begin(), seen.end());
    }

    static Graph from_edges(std::size_t vertices, const std::vector<Edge>& edges)
    {
        return Graph(vertices, to_pairs(edges));
    }

    std::size_t vertices() const { return m_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(const Edge& e) const
    {
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    std::vector<std::vector<std::size_t>> adjacency() const
    {
        std::vector<std::vector<std::size_t>> adj(m_);
        for (const Edge& e : edges_) {
            adj[e.lo].push_back(e.hi);
            adj[e.hi].push_back(e.lo);
        }
        return adj;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    static std::vector<std::pair<std::size_t, std::size_t>> to_pairs(const std::vector<Edge>& edges)
    {
        std::vector<std::pair<std::size_t, std::size_t>> r;
        r.reserve(edges.size());
        for (const Edge& e : edges) r.emplace_back(e.lo, e.hi);
        return r;
    }

    std::size_t m_ = 0;
    std::vector<Edge> edges_;
};

inline Graph path_graph(std::size_t m)
{
    require(m >= 1, "path needs at least one vertex");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < m; ++i) edges.push_back({i, i + 1});
    return Graph::from_edges(m, edges);
}

inline Graph cycle_graph(std::size_t m)
{
    require(m >= 3, "cycle needs at least three vertices");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < m; ++i) edges.push_back({i, i + 1});
    edges.push_back({0, m - 1});
    return Graph::from_edges(m, edges);
}

inline Graph complete_graph(std::size_t m)
{
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) edges.push_back({i, j});
    return Graph::from_edges(m, edges);
}

/// Vertices of `a` keep their indices; vertices of `b` are shifted by a.vertices().
inline Graph disjoint_union(const Graph& a, const Graph& b)
{
    std::vector<Edge> edges = a.edges();
    const std::size_t shift = a.vertices();
    for (const Edge& e : b.edges()) edges.push_back({e.lo + shift, e.hi + shift});
    return Graph::from_edges(a.vertices() + b.vertices(), edges);
}

/// Connected components of g with `removed` deleted, each block sorted, blocks ordered by least vertex.
inline std::vector<std::vector<std::size_t>> components_after_removal(const Graph& g,
                                                                      const std::vector<Edge>& removed)
{
    std::set<Edge> gone;
    for (const Edge& e : removed) {
        require(g.has_edge(e),
                "removed edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ") not in graph");
        gone.insert(e);
    }

    std::vector<std::size_t> parent(g.vertices());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const Edge& e : g.edges()) {
        if (gone.contains(e)) continue;
        const std::size_t a = find(e.lo), b = find(e.hi);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> block_of(g.vertices(), static_cast<std::size_t>(-1));
    for (std::size_t v = 0; v < g.vertices(); ++v) {
        const std::size_t root = find(v);
        if (block_of[root] == static_cast<std::size_t>(-1)) {
            block_of[root] = blocks.size();
            blocks.emplace_back();
        }
        blocks[block_of[root]].push_back(v);
    }
    return blocks;
}

/// A connected acyclic Graph. Only constructible through validate_tree.
class Tree {
public:
    const Graph& graph() const { return g_; }
    std::size_t vertices() const { return g_.vertices(); }
    const std::vector<Edge>& edges() const { return g_.edges(); }

    friend Tree validate_tree(const Graph& g);

private:
    explicit Tree(Graph g) : g_(std::move(g)) {}
    Graph g_;
};

inline Tree validate_tree(const Graph& g)
{
    require(g.vertices() >= 1, "a tree needs at least one vertex");
    require(g.edge_count() + 1 == g.vertices(),
            "not a tree: " + std::to_string(g.edge_count()) + " edges on " +
                std::to_string(g.vertices()) + " vertices");
    require(components_after_removal(g, {}).size() == 1, "not a tree: graph is disconnected");
    return Tree(g);
}

} // namespace divsym
