#include "fotrans/generators.hpp"

#include <string>

#include "fotrans/errors.hpp"

namespace fotrans {

namespace {

void require_positive(const char* family, int value) {
    if (value < 1) throw InputError(std::string(family) + ": size parameter must be >= 1");
}

}  // namespace

Graph path(int n) {
    require_positive("path", n);
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, std::move(edges));
}

Graph cycle(int n) {
    require_positive("cycle", n);
    if (n < 3) return path(n);
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph(n, std::move(edges));
}

Graph grid(int width, int height) {
    require_positive("grid", width);
    require_positive("grid", height);
    std::vector<Edge> edges;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            int v = y * width + x;
            if (x + 1 < width) edges.emplace_back(v, v + 1);
            if (y + 1 < height) edges.emplace_back(v, v + width);
        }
    return Graph(width * height, std::move(edges));
}

Graph complete(int n) {
    require_positive("complete", n);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph star(int leaves) {
    require_positive("star", leaves);
    std::vector<Edge> edges;
    for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Graph(leaves + 1, std::move(edges));
}

Graph complete_binary_tree(int depth) {
    if (depth < 0 || depth > 20) throw InputError("complete_binary_tree: depth must be in [0, 20]");
    int n = (1 << (depth + 1)) - 1;
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back((v - 1) / 2, v);
    return Graph(n, std::move(edges));
}

Graph edgeless(int n) {
    require_positive("edgeless", n);
    return Graph(n);
}

Graph half_graph(int n) {
    require_positive("half_graph", n);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) edges.emplace_back(i, n + j);
    return Graph(2 * n, std::move(edges));
}

Graph powerset_bipartite(int n) {
    require_positive("powerset_bipartite", n);
    if (n > 16) throw InputError("powerset_bipartite: n must be <= 16");
    const int subsets = 1 << n;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int mask = 0; mask < subsets; ++mask)
            if ((mask >> i) & 1) edges.emplace_back(i, n + mask);
    return Graph(n + subsets, std::move(edges));
}

Graph random_graph(int n, double density, std::mt19937_64& rng) {
    require_positive("random_graph", n);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            // 53 high bits give a portable uniform draw in [0, 1).
            double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (draw < density) edges.emplace_back(u, v);
        }
    return Graph(n, std::move(edges));
}

}  // namespace fotrans
