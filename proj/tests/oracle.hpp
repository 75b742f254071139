#pragma once

// Test-only reference computations. Nothing here calls into the engine's
// permutation summer; the oracle goes through the public polynomial
// primitives one permutation at a time. Generators are re-exported from the
// library.

#include "divsym/graph.hpp"
#include "divsym/instances.hpp"
#include "divsym/polynomial.hpp"
#include "divsym/rational.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace divsym::oracle {

/// Textbook DS_G(f) at pt: permute the polynomial, evaluate, divide.
inline Rational naive_ds(const Polynomial& f, std::size_t m, const std::vector<Edge>& factors, const Point& pt)
{
    std::vector<std::size_t> images(m);
    std::iota(images.begin(), images.end(), std::size_t{0});
    Rational total = 0;
    do {
        const Permutation pi(images);
        Point moved(m);
        for (std::size_t i = 0; i < m; ++i) moved[i] = pt[pi(i)];
        Rational den = 1;
        for (const Edge& e : factors) den *= moved[e.lo] - moved[e.hi];
        total += evaluate(permute_variables(f, pi), pt) / den;
    } while (std::next_permutation(images.begin(), images.end()));
    return total;
}

inline Rational naive_ds(const Polynomial& f, const Graph& g, const Point& pt)
{
    return naive_ds(f, g.vertices(), g.edges(), pt);
}

using instances::all_compositions;
using instances::integer_point;
using instances::random_composition;
using instances::random_graph;
using instances::random_polynomial;
using instances::random_tree;
using instances::rational_point;

} // namespace divsym::oracle
