#include "fotrans/corpus.hpp"

#include <set>

#include "fotrans/errors.hpp"
#include "fotrans/graph_ops.hpp"

namespace fotrans {

std::vector<Graph> all_labeled_graphs(int n) {
    if (n < 0 || n > 8) throw SizeLimitExceeded("all_labeled_graphs", n, 8);
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    const std::uint64_t count = std::uint64_t{1} << pairs.size();
    std::vector<Graph> out;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if ((mask >> i) & 1U) edges.push_back(pairs[i]);
        out.emplace_back(n, std::move(edges));
    }
    return out;
}

std::vector<Graph> all_labeled_graphs_up_to(int max_vertices) {
    std::vector<Graph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        auto layer = all_labeled_graphs(n);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<Graph> graphs_up_to_isomorphism(int n, bool connected_only) {
    if (n > 7) throw SizeLimitExceeded("graphs_up_to_isomorphism", n, 7);
    std::set<Graph> seen;
    std::vector<Graph> out;
    for (Graph& g : all_labeled_graphs(n)) {
        if (connected_only && !is_connected(g)) continue;
        if (!seen.insert(canonical_form(g)).second) continue;
        out.push_back(std::move(g));
    }
    return out;
}

void for_each_coloring(const ColoredGraph& g, const std::vector<std::string>& names,
                       const std::function<void(const ColoredGraph&)>& visit) {
    const int n = g.vertex_count();
    const std::size_t bits = names.size() * static_cast<std::size_t>(n);
    if (bits > 40) throw BudgetExceeded("for_each_coloring", static_cast<double>(std::uint64_t{1} << 40), std::uint64_t{1} << 40);
    const std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t code = 0; code < count; ++code) {
        ColoredGraph colored = g;
        for (std::size_t p = 0; p < names.size(); ++p) {
            std::uint64_t mask = (code >> (p * static_cast<std::size_t>(n))) & ((std::uint64_t{1} << n) - 1);
            colored = colored.with_predicate(names[p], VertexSubset::from_mask(mask, n));
        }
        visit(colored);
    }
}

std::vector<ColoredGraph> all_colorings(const ColoredGraph& g, const std::vector<std::string>& names) {
    std::vector<ColoredGraph> out;
    for_each_coloring(g, names, [&](const ColoredGraph& c) { out.push_back(c); });
    return out;
}

std::vector<ColoredGraph> colored_corpus(const std::vector<Graph>& graphs, const std::vector<std::string>& names) {
    std::vector<ColoredGraph> out;
    for (const Graph& g : graphs) {
        auto layer = all_colorings(g, names);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

}  // namespace fotrans
