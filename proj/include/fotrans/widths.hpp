#pragma once

#include <optional>
#include <vector>

#include "fotrans/graph.hpp"

namespace fotrans {

inline constexpr int kWidthVertexCap = 12;
inline constexpr int kStarColoringVertexCap = 14;

/// Minimal l such that some vertex ordering stretches no edge over more than l positions.
int bandwidth(const Graph& g);

/// Exact vertex separation number, which equals pathwidth.
int pathwidth(const Graph& g);

/// Exact treewidth by dynamic programming over elimination prefixes. 0 for the empty graph.
int treewidth(const Graph& g);

/// Proper, and no path on four vertices uses only two colors.
bool is_star_coloring(const Graph& g, const std::vector<int>& colors);

/// A star coloring with colors 0..max_colors-1, the lexicographically first one in vertex
/// order with colors introduced in increasing order; nullopt when none exists.
std::optional<std::vector<int>> star_coloring_within(const Graph& g, int max_colors);

/// Fewest colors of a star coloring. 0 for the empty graph.
int star_chromatic_number(const Graph& g);

}  // namespace fotrans
