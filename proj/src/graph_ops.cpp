#include "fotrans/graph_ops.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fotrans/errors.hpp"

namespace fotrans {

Graph disjoint_union(const Graph& g, const Graph& h) {
    const int shift = g.vertex_count();
    std::vector<Edge> edges = g.edges();
    for (const Edge& e : h.edges()) edges.emplace_back(e.u + shift, e.v + shift);
    return Graph(g.vertex_count() + h.vertex_count(), std::move(edges));
}

Graph complete_join(const Graph& g, const Graph& h) {
    const int shift = g.vertex_count();
    std::vector<Edge> edges = disjoint_union(g, h).edges();
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = 0; v < h.vertex_count(); ++v) edges.emplace_back(u, v + shift);
    return Graph(g.vertex_count() + h.vertex_count(), std::move(edges));
}

Graph lexicographic_product(const Graph& g, const Graph& h) {
    const int m = h.vertex_count();
    std::vector<Edge> edges;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = 0; v < m; ++v)
            for (Vertex u2 = 0; u2 < g.vertex_count(); ++u2)
                for (Vertex v2 = 0; v2 < m; ++v2) {
                    int a = u * m + v;
                    int b = u2 * m + v2;
                    if (a >= b) continue;
                    if (g.adjacent(u, u2) || (u == u2 && h.adjacent(v, v2))) edges.emplace_back(a, b);
                }
    return Graph(g.vertex_count() * m, std::move(edges));
}

Graph power(const Graph& g, int k) {
    if (k < 1) throw InputError("power: exponent must be >= 1");
    DistanceMatrix dist(g);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = u + 1; v < g.vertex_count(); ++v)
            if (dist.at(u, v) <= k) edges.emplace_back(u, v);
    return Graph(g.vertex_count(), std::move(edges));
}

Graph complement(const Graph& g) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = u + 1; v < g.vertex_count(); ++v)
            if (!g.adjacent(u, v)) edges.emplace_back(u, v);
    return Graph(g.vertex_count(), std::move(edges));
}

ColoredGraph copy_operation(const ColoredGraph& g, int k) {
    if (k < 1) throw InputError("copy_operation: arity must be >= 1");
    const int n = g.vertex_count();
    std::vector<Edge> edges;
    for (int i = 0; i < k; ++i)
        for (const Edge& e : g.graph().edges()) edges.emplace_back(i * n + e.u, i * n + e.v);
    for (Vertex v = 0; v < n; ++v)
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) edges.emplace_back(i * n + v, j * n + v);

    std::map<std::string, VertexSubset> predicates;
    for (const auto& [name, members] : g.predicates()) {
        std::vector<Vertex> copies;
        for (int i = 0; i < k; ++i)
            for (Vertex v : members) copies.push_back(i * n + v);
        predicates[name] = VertexSubset(std::move(copies));
    }
    for (int i = 0; i < k; ++i) {
        std::vector<Vertex> layer;
        for (Vertex v = 0; v < n; ++v) layer.push_back(i * n + v);
        predicates["copy_" + std::to_string(i + 1)] = VertexSubset(std::move(layer));
    }
    return ColoredGraph(Graph(k * n, std::move(edges)), std::move(predicates));
}

Restriction<Graph> induced_subgraph(const Graph& g, const VertexSubset& keep) {
    Restriction<Graph> out;
    out.original = keep.members();
    std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < out.original.size(); ++i) {
        Vertex v = out.original[i];
        if (v < 0 || v >= g.vertex_count()) throw InputError("induced_subgraph: vertex out of range");
        local[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int a = local[static_cast<std::size_t>(e.u)];
        int b = local[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) edges.emplace_back(a, b);
    }
    out.graph = Graph(static_cast<int>(out.original.size()), std::move(edges));
    return out;
}

Restriction<ColoredGraph> induced_subgraph(const ColoredGraph& g, const VertexSubset& keep) {
    auto plain = induced_subgraph(g.graph(), keep);
    std::map<std::string, VertexSubset> predicates;
    for (const auto& [name, members] : g.predicates()) {
        std::vector<Vertex> kept;
        for (Vertex v : members)
            if (Vertex l = plain.local(v); l >= 0) kept.push_back(l);
        predicates[name] = VertexSubset(std::move(kept));
    }
    return {ColoredGraph(std::move(plain.graph), std::move(predicates)), std::move(plain.original)};
}

namespace {

VertexSubset ball_vertices(const Graph& g, const VertexSubset& centers, int radius) {
    if (centers.empty()) throw InputError("ball: centers must be nonempty");
    if (radius < 0) throw InputError("ball: radius must be >= 0");
    for (Vertex c : centers)
        if (c < 0 || c >= g.vertex_count()) throw InputError("ball: center out of range");
    auto dist = bfs_distances(g, centers.members());
    std::vector<Vertex> members;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (dist[static_cast<std::size_t>(v)] <= radius) members.push_back(v);
    return VertexSubset(std::move(members));
}

}  // namespace

Restriction<Graph> ball(const Graph& g, const VertexSubset& centers, int radius) {
    return induced_subgraph(g, ball_vertices(g, centers, radius));
}

Restriction<ColoredGraph> ball(const ColoredGraph& g, const VertexSubset& centers, int radius) {
    return induced_subgraph(g, ball_vertices(g.graph(), centers, radius));
}

namespace {

Graph iso_key(const Graph& g) {
    return g.vertex_count() <= kIsomorphismVertexCap ? canonical_form(g) : g;
}

}  // namespace

std::vector<Graph> loc_r(const std::vector<Graph>& graphs, int radius) {
    std::vector<Graph> out;
    std::vector<Graph> keys;
    for (const Graph& g : graphs)
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            Graph b = ball(g, VertexSubset{v}, radius).graph;
            Graph key = iso_key(b);
            if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
            keys.push_back(std::move(key));
            out.push_back(std::move(b));
        }
    return out;
}

namespace {

// Backtracking search for the labeling maximizing the colex-ordered adjacency string.
// Position p may only hold vertices of the p-th degree cell, so the result is invariant.
class CanonicalSearch {
public:
    explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.vertex_count()) {
        order_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) order_[static_cast<std::size_t>(v)] = v;
        std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
        cell_of_position_.resize(static_cast<std::size_t>(n_));
        for (int p = 0; p < n_; ++p) cell_of_position_[static_cast<std::size_t>(p)] = g.degree(order_[static_cast<std::size_t>(p)]);
        used_.assign(static_cast<std::size_t>(n_), 0);
        current_.reserve(static_cast<std::size_t>(n_ * n_ / 2));
    }

    Graph run() {
        extend(0);
        std::vector<Edge> edges;
        std::size_t bit = 0;
        for (int p = 1; p < n_; ++p)
            for (int q = 0; q < p; ++q, ++bit)
                if (best_[bit]) edges.emplace_back(q, p);
        return Graph(n_, std::move(edges));
    }

private:
    // Compares the current prefix with the same-length prefix of the best string so far.
    int compare_prefix() const {
        if (!have_best_) return 1;
        for (std::size_t i = 0; i < current_.size(); ++i)
            if (current_[i] != best_[i]) return current_[i] > best_[i] ? 1 : -1;
        return 0;
    }

    void extend(int p) {
        if (p == n_) {
            if (compare_prefix() > 0) {
                best_ = current_;
                have_best_ = true;
            }
            return;
        }
        for (Vertex v : order_) {
            if (used_[static_cast<std::size_t>(v)] || g_.degree(v) != cell_of_position_[static_cast<std::size_t>(p)]) continue;
            const std::size_t start = current_.size();
            for (int q = 0; q < p; ++q) current_.push_back(g_.adjacent(placed_[static_cast<std::size_t>(q)], v) ? 1 : 0);
            if (compare_prefix() >= 0) {
                used_[static_cast<std::size_t>(v)] = 1;
                placed_.push_back(v);
                extend(p + 1);
                placed_.pop_back();
                used_[static_cast<std::size_t>(v)] = 0;
            }
            current_.resize(start);
        }
    }

    const Graph& g_;
    int n_;
    std::vector<Vertex> order_;
    std::vector<int> cell_of_position_;
    std::vector<char> used_;
    std::vector<Vertex> placed_;
    std::vector<char> current_;
    std::vector<char> best_;
    bool have_best_ = false;
};

}  // namespace

Graph canonical_form(const Graph& g) {
    if (g.vertex_count() > kIsomorphismVertexCap)
        throw SizeLimitExceeded("canonical_form", g.vertex_count(), kIsomorphismVertexCap);
    return CanonicalSearch(g).run();
}

bool isomorphic(const Graph& g, const Graph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
    if (g.vertex_count() > kIsomorphismVertexCap) return g == h;
    std::vector<int> dg, dh;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        dg.push_back(g.degree(v));
        dh.push_back(h.degree(v));
    }
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh) return false;
    return canonical_form(g) == canonical_form(h);
}

Graph Subgraph::relabeled() const {
    std::vector<Edge> local;
    const auto& vs = vertices.members();
    auto index = [&](Vertex v) {
        auto it = std::lower_bound(vs.begin(), vs.end(), v);
        if (it == vs.end() || *it != v) throw InputError("subgraph edge endpoint outside its vertex set");
        return static_cast<Vertex>(it - vs.begin());
    };
    for (const Edge& e : edges) local.emplace_back(index(e.u), index(e.v));
    return Graph(static_cast<int>(vs.size()), std::move(local));
}

bool is_subgraph_of(const Subgraph& sub, const Graph& host) {
    for (Vertex v : sub.vertices)
        if (v < 0 || v >= host.vertex_count()) return false;
    for (const Edge& e : sub.edges)
        if (!sub.vertices.contains(e.u) || !sub.vertices.contains(e.v) || e.v >= host.vertex_count() ||
            !host.adjacent(e.u, e.v))
            return false;
    return true;
}

SubgraphEnumerator::SubgraphEnumerator(const Graph& g, std::optional<std::size_t> limit)
    : graph_(&g), limit_(limit) {
    if (g.vertex_count() > 30) throw SizeLimitExceeded("enumerate_subgraphs", g.vertex_count(), 30);
    vertex_mask_end_ = std::uint64_t{1} << g.vertex_count();
    load_vertex_mask();
}

void SubgraphEnumerator::load_vertex_mask() {
    induced_.clear();
    for (const Edge& e : graph_->edges())
        if (((vertex_mask_ >> e.u) & 1U) && ((vertex_mask_ >> e.v) & 1U)) induced_.push_back(e);
    if (induced_.size() > 40) throw SizeLimitExceeded("enumerate_subgraphs", static_cast<int>(induced_.size()), 40, "induced edges");
    edge_mask_ = 0;
    edge_mask_end_ = std::uint64_t{1} << induced_.size();
}

std::optional<Subgraph> SubgraphEnumerator::next() {
    if (limit_ && produced_ >= *limit_) return std::nullopt;
    if (vertex_mask_ >= vertex_mask_end_) return std::nullopt;
    Subgraph sub;
    sub.vertices = VertexSubset::from_mask(vertex_mask_, graph_->vertex_count());
    for (std::size_t i = 0; i < induced_.size(); ++i)
        if ((edge_mask_ >> i) & 1U) sub.edges.push_back(induced_[i]);
    ++produced_;
    if (++edge_mask_ >= edge_mask_end_) {
        ++vertex_mask_;
        if (vertex_mask_ < vertex_mask_end_) load_vertex_mask();
    }
    return sub;
}

std::vector<Subgraph> enumerate_subgraphs(const Graph& g, std::optional<std::size_t> limit) {
    std::vector<Subgraph> out;
    SubgraphEnumerator it(g, limit);
    while (auto sub = it.next()) out.push_back(std::move(*sub));
    return out;
}

}  // namespace fotrans
