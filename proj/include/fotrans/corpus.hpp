#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fotrans/graph.hpp"

namespace fotrans {

// Finite corpora standing in for graph classes. Every claim checked "on a class" is checked
// on one of these.

/// Every labeled graph on exactly n vertices, in increasing edge-bitmask order (n <= 8).
std::vector<Graph> all_labeled_graphs(int n);

/// Every labeled graph on 1..max_vertices vertices.
std::vector<Graph> all_labeled_graphs_up_to(int max_vertices);

/// One representative per isomorphism class on exactly n vertices (n <= 7), first in labeled order.
std::vector<Graph> graphs_up_to_isomorphism(int n, bool connected_only = false);

/// Calls `visit` for each expansion of g by the named predicates, enumerating the
/// (predicate, vertex) membership bits as a counter whose bit p*n + v is "v in names[p]".
void for_each_coloring(const ColoredGraph& g, const std::vector<std::string>& names,
                       const std::function<void(const ColoredGraph&)>& visit);

std::vector<ColoredGraph> all_colorings(const ColoredGraph& g, const std::vector<std::string>& names);

/// Every graph of `graphs` expanded in every way by `names`.
std::vector<ColoredGraph> colored_corpus(const std::vector<Graph>& graphs, const std::vector<std::string>& names);

}  // namespace fotrans
