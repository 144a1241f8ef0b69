#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fotrans {

using Vertex = int;

/// Unordered vertex pair stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
};

/// Sorted set of vertex indices.
class VertexSubset {
public:
    VertexSubset() = default;
    VertexSubset(std::initializer_list<Vertex> members);
    explicit VertexSubset(std::vector<Vertex> members);

    /// Members are the set bits of `mask`.
    static VertexSubset from_mask(std::uint64_t mask, int n);
    static VertexSubset all(int n);

    bool contains(Vertex v) const;
    bool empty() const noexcept { return members_.empty(); }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<Vertex>& members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    /// Membership flags for vertices 0..n-1.
    std::vector<char> indicator(int n) const;

    auto operator<=>(const VertexSubset&) const = default;

private:
    std::vector<Vertex> members_;
};

VertexSubset set_union(const VertexSubset& a, const VertexSubset& b);

/// Finite simple graph on vertices 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);
    /// Self-loops are rejected; duplicate pairs collapse.
    Graph(int vertex_count, std::vector<Edge> edges);
    Graph(int vertex_count, std::initializer_list<std::pair<Vertex, Vertex>> edges);

    /// Builds from a row-major n*n 0/1 matrix; only the upper triangle is read.
    static Graph from_matrix(int vertex_count, const std::vector<char>& matrix);

    int vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    bool adjacent(Vertex u, Vertex v) const {
        return matrix_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] != 0;
    }

    /// Row-major adjacency matrix copy, suitable for editing and from_matrix().
    std::vector<char> matrix() const { return matrix_; }

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }
    std::strong_ordering operator<=>(const Graph& other) const {
        if (auto c = n_ <=> other.n_; c != 0) return c;
        return edges_ <=> other.edges_;
    }

private:
    void index();

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<char> matrix_;
};

/// A graph expanded with named unary predicates.
class ColoredGraph {
public:
    ColoredGraph() = default;
    ColoredGraph(Graph graph);  // NOLINT: a plain graph is an expansion with no predicates
    ColoredGraph(Graph graph, std::map<std::string, VertexSubset> predicates);

    const Graph& graph() const noexcept { return graph_; }
    int vertex_count() const noexcept { return graph_.vertex_count(); }
    const std::map<std::string, VertexSubset>& predicates() const noexcept { return predicates_; }

    bool has_predicate(const std::string& name) const { return predicates_.count(name) != 0; }
    /// Absent names read as the empty set.
    const VertexSubset& predicate(const std::string& name) const;

    ColoredGraph with_predicate(const std::string& name, VertexSubset members) const;
    ColoredGraph with_graph(Graph graph) const;

    bool operator==(const ColoredGraph&) const = default;
    auto operator<=>(const ColoredGraph& other) const {
        if (auto c = graph_ <=> other.graph_; c != 0) return c;
        return predicates_ <=> other.predicates_;
    }

private:
    Graph graph_;
    std::map<std::string, VertexSubset> predicates_;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// All-pairs BFS distances; kUnreachable across components.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(const Graph& g);

    int at(Vertex u, Vertex v) const {
        return dist_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)];
    }
    int vertex_count() const noexcept { return n_; }
    /// Largest finite distance.
    int eccentricity_max() const;

private:
    int n_ = 0;
    std::vector<int> dist_;
};

/// Distances from a set of sources.
std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources);

bool is_connected(const Graph& g);
int component_count(const Graph& g);

// Text format: "n <count>", "e <u> <v>", "color <name> <v>...", '#' comments.
ColoredGraph read_graph(std::istream& in);
ColoredGraph read_graph_file(const std::string& path);
ColoredGraph parse_graph(const std::string& text);
void write_graph(std::ostream& out, const ColoredGraph& g);
std::string format_graph(const ColoredGraph& g);

}  // namespace fotrans
