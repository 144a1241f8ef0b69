#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fotrans/graph.hpp"

namespace fotrans {

/// G + H; vertices of h are shifted by |V(g)|.
Graph disjoint_union(const Graph& g, const Graph& h);
/// G ⊕ H: disjoint union plus every cross edge.
Graph complete_join(const Graph& g, const Graph& h);
/// G • H on V(g) x V(h); (u, v) has index u * |V(h)| + v.
Graph lexicographic_product(const Graph& g, const Graph& h);
/// G^k: u ~ v iff 1 <= dist(u, v) <= k.
Graph power(const Graph& g, int k);
Graph complement(const Graph& g);

/// C_k: copy i (1-based) of v has index (i-1) * |V| + v. Predicates are replicated to every copy
/// and the marker predicate "copy_i" holds exactly on copy i.
ColoredGraph copy_operation(const ColoredGraph& g, int k);

/// An induced subgraph together with its embedding into the source graph.
template <class G>
struct Restriction {
    G graph;
    /// original[i] is the source vertex of local vertex i (increasing).
    std::vector<Vertex> original;

    /// Local index of a source vertex, or -1.
    Vertex local(Vertex v) const;
};

Restriction<Graph> induced_subgraph(const Graph& g, const VertexSubset& keep);
Restriction<ColoredGraph> induced_subgraph(const ColoredGraph& g, const VertexSubset& keep);

/// B_r(U): subgraph induced by the vertices at distance <= r from some center. Centers must be nonempty.
Restriction<Graph> ball(const Graph& g, const VertexSubset& centers, int radius);
Restriction<ColoredGraph> ball(const ColoredGraph& g, const VertexSubset& centers, int radius);

/// Loc_r: every radius-r ball of every graph, first representative of each isomorphism class
/// in order of appearance.
std::vector<Graph> loc_r(const std::vector<Graph>& graphs, int radius);

/// Vertex cap for exact isomorphism and canonical forms.
inline constexpr int kIsomorphismVertexCap = 10;

/// Lexicographically greatest relabeling among degree-ordered labelings. Requires at most
/// kIsomorphismVertexCap vertices.
Graph canonical_form(const Graph& g);

/// Exact isomorphism for graphs within kIsomorphismVertexCap vertices, labeled equality above.
bool isomorphic(const Graph& g, const Graph& h);

/// A subgraph of a host graph given by explicit vertex and edge subsets in host labels.
struct Subgraph {
    VertexSubset vertices;
    std::vector<Edge> edges;

    /// The subgraph relabeled onto 0..|vertices|-1 in increasing vertex order.
    Graph relabeled() const;
    bool operator==(const Subgraph&) const = default;
};

/// True when the edges of `sub` are edges of `host` with endpoints in sub.vertices.
bool is_subgraph_of(const Subgraph& sub, const Graph& host);

/// Streams every subgraph of a graph: vertex subsets in increasing bitmask order, and for each
/// vertex subset every subset of its induced edges in increasing bitmask order.
class SubgraphEnumerator {
public:
    explicit SubgraphEnumerator(const Graph& g, std::optional<std::size_t> limit = std::nullopt);

    std::optional<Subgraph> next();
    std::size_t produced() const noexcept { return produced_; }

private:
    void load_vertex_mask();

    const Graph* graph_;
    std::optional<std::size_t> limit_;
    std::size_t produced_ = 0;
    std::uint64_t vertex_mask_ = 0;
    std::uint64_t vertex_mask_end_ = 0;
    std::vector<Edge> induced_;
    std::uint64_t edge_mask_ = 0;
    std::uint64_t edge_mask_end_ = 0;
};

std::vector<Subgraph> enumerate_subgraphs(const Graph& g, std::optional<std::size_t> limit = std::nullopt);

template <class G>
Vertex Restriction<G>::local(Vertex v) const {
    auto it = std::lower_bound(original.begin(), original.end(), v);
    if (it == original.end() || *it != v) return -1;
    return static_cast<Vertex>(it - original.begin());
}

}  // namespace fotrans
