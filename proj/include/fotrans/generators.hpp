#pragma once

#include <cstdint>
#include <random>

#include "fotrans/graph.hpp"

namespace fotrans {

/// P_n: vertices 0..n-1 in order.
Graph path(int n);
/// C_n for n >= 3; cycle(1) and cycle(2) degenerate to path(1) and path(2).
Graph cycle(int n);
/// w x h grid, vertex (x, y) has index y * w + x.
Graph grid(int width, int height);
Graph complete(int n);
/// K_{1,n}: center 0, leaves 1..n.
Graph star(int leaves);
/// Complete binary tree with `depth` levels below the root (2^(depth+1) - 1 vertices), heap order.
Graph complete_binary_tree(int depth);
Graph edgeless(int n);

/// Half-graph H_n: a_i = i-1 and b_j = n+j-1, with a_i ~ b_j iff i <= j.
Graph half_graph(int n);

/// Left vertices 0..n-1, right vertex n+J for each subset J of [n] (as a bitmask), i ~ J iff i in J.
Graph powerset_bipartite(int n);

/// G(n, p) with every pair decided in lexicographic order from `rng`.
Graph random_graph(int n, double density, std::mt19937_64& rng);

}  // namespace fotrans
