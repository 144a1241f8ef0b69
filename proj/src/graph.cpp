#include "fotrans/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "fotrans/errors.hpp"

namespace fotrans {

VertexSubset::VertexSubset(std::initializer_list<Vertex> members) : VertexSubset(std::vector<Vertex>(members)) {}

VertexSubset::VertexSubset(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSubset VertexSubset::from_mask(std::uint64_t mask, int n) {
    std::vector<Vertex> members;
    for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1U) members.push_back(v);
    VertexSubset s;
    s.members_ = std::move(members);
    return s;
}

VertexSubset VertexSubset::all(int n) {
    VertexSubset s;
    s.members_.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) s.members_[static_cast<std::size_t>(v)] = v;
    return s;
}

bool VertexSubset::contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

std::vector<char> VertexSubset::indicator(int n) const {
    std::vector<char> flags(static_cast<std::size_t>(n), 0);
    for (Vertex v : members_)
        if (v >= 0 && v < n) flags[static_cast<std::size_t>(v)] = 1;
    return flags;
}

VertexSubset set_union(const VertexSubset& a, const VertexSubset& b) {
    std::vector<Vertex> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return VertexSubset(std::move(out));
}

Graph::Graph(int vertex_count) : Graph(vertex_count, std::vector<Edge>{}) {}

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 0) throw InputError("negative vertex count");
    for (const Edge& e : edges_) {
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        if (e.u < 0 || e.v >= n_)
            throw InputError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    index();
}

Graph::Graph(int vertex_count, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Graph(vertex_count, [&] {
          std::vector<Edge> list;
          for (auto [u, v] : edges) list.emplace_back(u, v);
          return list;
      }()) {}

Graph Graph::from_matrix(int vertex_count, const std::vector<char>& matrix) {
    std::vector<Edge> edges;
    const auto n = static_cast<std::size_t>(vertex_count);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (matrix[u * n + v]) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return Graph(vertex_count, std::move(edges));
}

void Graph::index() {
    const auto n = static_cast<std::size_t>(n_);
    adjacency_.assign(n, {});
    matrix_.assign(n * n, 0);
    for (const Edge& e : edges_) {
        adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
        adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
        matrix_[static_cast<std::size_t>(e.u) * n + static_cast<std::size_t>(e.v)] = 1;
        matrix_[static_cast<std::size_t>(e.v) * n + static_cast<std::size_t>(e.u)] = 1;
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

ColoredGraph::ColoredGraph(Graph graph) : graph_(std::move(graph)) {}

ColoredGraph::ColoredGraph(Graph graph, std::map<std::string, VertexSubset> predicates)
    : graph_(std::move(graph)), predicates_(std::move(predicates)) {
    for (const auto& [name, members] : predicates_) {
        if (name.empty()) throw InputError("empty predicate name");
        for (Vertex v : members)
            if (v < 0 || v >= graph_.vertex_count())
                throw InputError("predicate " + name + " contains invalid vertex " + std::to_string(v));
    }
}

const VertexSubset& ColoredGraph::predicate(const std::string& name) const {
    static const VertexSubset kEmpty;
    auto it = predicates_.find(name);
    return it == predicates_.end() ? kEmpty : it->second;
}

ColoredGraph ColoredGraph::with_predicate(const std::string& name, VertexSubset members) const {
    auto predicates = predicates_;
    predicates[name] = std::move(members);
    return ColoredGraph(graph_, std::move(predicates));
}

ColoredGraph ColoredGraph::with_graph(Graph graph) const { return ColoredGraph(std::move(graph), predicates_); }

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.vertex_count()) {
    const auto n = static_cast<std::size_t>(n_);
    dist_.assign(n * n, kUnreachable);
    std::vector<Vertex> queue;
    queue.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        int* row = &dist_[s * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(static_cast<Vertex>(s));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex u = queue[head];
            for (Vertex w : g.neighbors(u)) {
                if (row[w] != kUnreachable) continue;
                row[w] = row[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

int DistanceMatrix::eccentricity_max() const {
    int best = 0;
    for (int d : dist_)
        if (d != kUnreachable) best = std::max(best, d);
    return best;
}

std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), kUnreachable);
    std::queue<Vertex> queue;
    for (Vertex s : sources) {
        if (dist[static_cast<std::size_t>(s)] == 0) continue;
        dist[static_cast<std::size_t>(s)] = 0;
        queue.push(s);
    }
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop();
        for (Vertex w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] != kUnreachable) continue;
            dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
            queue.push(w);
        }
    }
    return dist;
}

int component_count(const Graph& g) {
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    int components = 0;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++components;
        std::vector<Vertex> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u))
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
    }
    return components;
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

namespace {

[[noreturn]] void format_error(int line, const std::string& message) {
    throw InputError("graph format, line " + std::to_string(line) + ": " + message);
}

int read_index(std::istringstream& fields, int line, const char* what) {
    long long value = 0;
    if (!(fields >> value)) format_error(line, std::string("expected ") + what);
    if (value < 0 || value > std::numeric_limits<int>::max()) format_error(line, std::string(what) + " out of range");
    return static_cast<int>(value);
}

}  // namespace

ColoredGraph read_graph(std::istream& in) {
    int n = -1;
    std::vector<Edge> edges;
    std::map<std::string, VertexSubset> predicates;
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
        std::istringstream fields(text);
        std::string tag;
        if (!(fields >> tag)) continue;
        if (tag == "n") {
            if (n >= 0) format_error(line, "duplicate vertex count");
            n = read_index(fields, line, "vertex count");
        } else if (tag == "e") {
            if (n < 0) format_error(line, "edge before vertex count");
            int u = read_index(fields, line, "vertex");
            int v = read_index(fields, line, "vertex");
            if (u >= n || v >= n) format_error(line, "vertex out of range");
            if (u == v) format_error(line, "self-loop");
            edges.emplace_back(u, v);
        } else if (tag == "color") {
            if (n < 0) format_error(line, "color before vertex count");
            std::string name;
            if (!(fields >> name)) format_error(line, "expected predicate name");
            if (predicates.count(name)) format_error(line, "duplicate predicate " + name);
            std::vector<Vertex> members;
            std::string token;
            while (fields >> token) {
                std::istringstream one(token);
                int v = read_index(one, line, "vertex");
                if (v >= n) format_error(line, "vertex out of range");
                members.push_back(v);
            }
            predicates.emplace(name, VertexSubset(std::move(members)));
            continue;
        } else {
            format_error(line, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (fields >> extra) format_error(line, "trailing field '" + extra + "'");
    }
    if (n < 0) throw InputError("graph format: missing vertex count");
    return ColoredGraph(Graph(n, std::move(edges)), std::move(predicates));
}

ColoredGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file " + path);
    return read_graph(in);
}

ColoredGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

void write_graph(std::ostream& out, const ColoredGraph& g) {
    out << "n " << g.vertex_count() << '\n';
    for (const Edge& e : g.graph().edges()) out << "e " << e.u << ' ' << e.v << '\n';
    for (const auto& [name, members] : g.predicates()) {
        out << "color " << name;
        for (Vertex v : members) out << ' ' << v;
        out << '\n';
    }
}

std::string format_graph(const ColoredGraph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

}  // namespace fotrans
