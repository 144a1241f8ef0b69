#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fotrans/graph.hpp"
#include "fotrans/graph_ops.hpp"
#include "fotrans/transduction.hpp"

namespace fotrans {

/// Colors 0..color_count()-1, one per vertex.
struct StarColoring {
    std::vector<int> colors;

    int color_count() const;
    bool operator==(const StarColoring&) const = default;
};

/// A star coloring with at most max_colors colors; the fewest possible when `minimal`.
/// Throws NotFoundError when none exists within the bound.
StarColoring find_star_coloring(const Graph& g, int max_colors, bool minimal = true);

/// Predicate names: "X", and "M<i>", "N<i>" for colors i = 1..C.
std::string monotone_color_name(int color);     // 0-based color -> "M<color+1>"
std::string monotone_neighbor_name(int color);  // 0-based color -> "N<color+1>"

/// The expansion of g that lets a fixed interpretation carve out the subgraph h:
/// X = V(h), M_i = color class i, N_i = vertices with an h-neighbor of color i.
struct MonotoneExpansion {
    ColoredGraph base;
    Subgraph target;
    int colors = 0;
};

/// Throws InputError when h is not a subgraph of g, or gamma is not proper on g (or, with
/// `require_star`, not a star coloring).
MonotoneExpansion build_expansion(const Graph& g, const Subgraph& h, const StarColoring& gamma,
                                  bool require_star = true);

/// E(x,y) & (M_1(x) & N_1(y) | ... ) & (M_1(y) & N_1(x) | ... ) over colors 1..C.
Formula monotone_eta(int colors);

/// Interpret(X(x), monotone_eta(colors)).
Interpretation monotone_interpretation(int colors);

struct MonotoneReport {
    bool passed = false;
    StarColoring coloring;
    MonotoneExpansion expansion;
    Graph output;
    Graph expected;
    /// First mismatching pair in output labels, when the edge sets differ.
    std::optional<Edge> mismatch;
    std::string failure;

    /// Human-readable pipeline trace: coloring, expansion, interpretation, comparison.
    std::string trace() const;
};

/// Finds a minimal star coloring within max_colors, builds the expansion, applies the
/// interpretation and compares with h (vertex set and edge set). Throws NotFoundError when no
/// coloring exists.
MonotoneReport verify_monotone(const Graph& g, const Subgraph& h, int max_colors);

/// Same with a supplied coloring, which is only required to be proper.
MonotoneReport verify_monotone_with(const Graph& g, const Subgraph& h, const StarColoring& gamma);

/// The subgraph of g spanned by a colored graph file's edges: vertices from the predicate
/// "vertices" when present, otherwise 0..n-1.
Subgraph subgraph_from(const ColoredGraph& h);

}  // namespace fotrans
