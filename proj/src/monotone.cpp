#include "fotrans/monotone.hpp"

#include <algorithm>
#include <sstream>

#include "fotrans/errors.hpp"
#include "fotrans/widths.hpp"

namespace fotrans {

int StarColoring::color_count() const {
    int c = 0;
    for (int x : colors) c = std::max(c, x + 1);
    return c;
}

StarColoring find_star_coloring(const Graph& g, int max_colors, bool minimal) {
    if (minimal) {
        for (int k = g.vertex_count() == 0 ? 0 : 1; k <= max_colors; ++k)
            if (auto c = star_coloring_within(g, k)) return StarColoring{*c};
    } else if (auto c = star_coloring_within(g, max_colors)) {
        return StarColoring{*c};
    }
    throw NotFoundError("no star coloring with at most " + std::to_string(max_colors) + " colors");
}

std::string monotone_color_name(int color) { return "M" + std::to_string(color + 1); }
std::string monotone_neighbor_name(int color) { return "N" + std::to_string(color + 1); }

MonotoneExpansion build_expansion(const Graph& g, const Subgraph& h, const StarColoring& gamma, bool require_star) {
    if (!is_subgraph_of(h, g)) throw InputError("target is not a subgraph of the source graph");
    if (gamma.colors.size() != static_cast<std::size_t>(g.vertex_count()))
        throw InputError("coloring has " + std::to_string(gamma.colors.size()) + " entries for " +
                         std::to_string(g.vertex_count()) + " vertices");
    for (int c : gamma.colors)
        if (c < 0) throw InputError("negative color");
    for (const auto& e : g.edges())
        if (gamma.colors[static_cast<std::size_t>(e.u)] == gamma.colors[static_cast<std::size_t>(e.v)])
            throw InputError("coloring is not proper");
    if (require_star && !is_star_coloring(g, gamma.colors)) throw InputError("coloring is not a star coloring");

    MonotoneExpansion out;
    out.target = h;
    out.colors = std::max(1, gamma.color_count());
    std::map<std::string, VertexSubset> predicates;
    predicates["X"] = h.vertices;
    std::vector<std::vector<Vertex>> classes(static_cast<std::size_t>(out.colors));
    std::vector<std::vector<char>> near(static_cast<std::size_t>(out.colors),
                                        std::vector<char>(static_cast<std::size_t>(g.vertex_count()), 0));
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        classes[static_cast<std::size_t>(gamma.colors[static_cast<std::size_t>(v)])].push_back(v);
    for (const auto& e : h.edges) {
        near[static_cast<std::size_t>(gamma.colors[static_cast<std::size_t>(e.v)])][static_cast<std::size_t>(e.u)] = 1;
        near[static_cast<std::size_t>(gamma.colors[static_cast<std::size_t>(e.u)])][static_cast<std::size_t>(e.v)] = 1;
    }
    for (int i = 0; i < out.colors; ++i) {
        predicates[monotone_color_name(i)] = VertexSubset(classes[static_cast<std::size_t>(i)]);
        std::vector<Vertex> members;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (near[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)]) members.push_back(v);
        predicates[monotone_neighbor_name(i)] = VertexSubset(members);
    }
    out.base = ColoredGraph(g, std::move(predicates));
    return out;
}

Formula monotone_eta(int colors) {
    if (colors < 1) throw InputError("monotone_eta needs at least one color");
    std::vector<Formula> forward, backward;
    for (int i = 0; i < colors; ++i) {
        forward.push_back(Formula::conjunction(Formula::predicate(monotone_color_name(i), "x"),
                                               Formula::predicate(monotone_neighbor_name(i), "y")));
        backward.push_back(Formula::conjunction(Formula::predicate(monotone_color_name(i), "y"),
                                                Formula::predicate(monotone_neighbor_name(i), "x")));
    }
    return Formula::conjunction(
        {Formula::edge("x", "y"), Formula::disjunction(forward), Formula::disjunction(backward)});
}

Interpretation monotone_interpretation(int colors) {
    return Interpretation(Formula::predicate("X", "x"), monotone_eta(colors));
}

std::string MonotoneReport::trace() const {
    std::ostringstream out;
    out << "coloring:";
    for (int c : coloring.colors) out << ' ' << c + 1;
    out << "\ncolors: " << expansion.colors << "\nexpansion:\n" << format_graph(expansion.base);
    out << "interpretation: nu = X(x), eta = " << monotone_eta(std::max(1, expansion.colors)).to_string() << '\n';
    out << "output:\n" << format_graph(output) << "expected:\n" << format_graph(expected);
    out << "result: " << (passed ? "equal" : failure) << '\n';
    return out.str();
}

MonotoneReport verify_monotone_with(const Graph& g, const Subgraph& h, const StarColoring& gamma) {
    MonotoneReport report;
    report.coloring = gamma;
    report.expansion = build_expansion(g, h, gamma, false);
    report.output = monotone_interpretation(report.expansion.colors).apply(report.expansion.base).graph();
    report.expected = h.relabeled();
    if (report.output.vertex_count() != report.expected.vertex_count()) {
        report.failure = "vertex count " + std::to_string(report.output.vertex_count()) + " differs from " +
                         std::to_string(report.expected.vertex_count());
        return report;
    }
    const int n = report.output.vertex_count();
    for (Vertex u = 0; u < n && !report.mismatch; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (report.output.adjacent(u, v) != report.expected.adjacent(u, v)) {
                report.mismatch = Edge(u, v);
                const auto& vs = h.vertices.members();
                report.failure = std::string(report.output.adjacent(u, v) ? "spurious" : "missing") + " edge " +
                                 std::to_string(vs[static_cast<std::size_t>(u)]) + "-" +
                                 std::to_string(vs[static_cast<std::size_t>(v)]);
                break;
            }
    report.passed = !report.mismatch;
    return report;
}

MonotoneReport verify_monotone(const Graph& g, const Subgraph& h, int max_colors) {
    return verify_monotone_with(g, h, find_star_coloring(g, max_colors));
}

Subgraph subgraph_from(const ColoredGraph& h) {
    Subgraph s;
    s.vertices = h.has_predicate("vertices") ? h.predicate("vertices") : VertexSubset::all(h.vertex_count());
    s.edges = h.graph().edges();
    for (const auto& e : s.edges)
        if (!s.vertices.contains(e.u) || !s.vertices.contains(e.v))
            throw InputError("subgraph edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " leaves its vertex set");
    return s;
}

}  // namespace fotrans
