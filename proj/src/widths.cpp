#include "fotrans/widths.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "fotrans/errors.hpp"
#include "fotrans/limits.hpp"

namespace fotrans {

namespace {

using Mask = std::uint32_t;

std::vector<Mask> neighbor_masks(const Graph& g) {
    std::vector<Mask> out(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const auto& e : g.edges()) {
        out[static_cast<std::size_t>(e.u)] |= Mask{1} << e.v;
        out[static_cast<std::size_t>(e.v)] |= Mask{1} << e.u;
    }
    return out;
}

// Orderings that place the vertices one by one; a placed vertex whose window has closed may
// have no unplaced neighbor left.
class BandwidthSearch {
public:
    BandwidthSearch(const Graph& g, int width) : n_(g.vertex_count()), k_(width), adj_(neighbor_masks(g)) {}

    bool run() {
        order_.clear();
        return extend(0);
    }

private:
    bool extend(Mask placed) {
        const int p = static_cast<int>(order_.size());
        if (p == n_) return true;
        // The vertex that leaves the window must be finished.
        if (p > k_) {
            const Vertex old = order_[static_cast<std::size_t>(p - k_ - 1)];
            if (adj_[static_cast<std::size_t>(old)] & ~placed) return false;
        }
        const std::size_t window = static_cast<std::size_t>(std::max(0, p - k_));
        std::vector<Vertex> key(order_.begin() + static_cast<std::ptrdiff_t>(window), order_.end());
        if (failed_.count({placed, key})) return false;
        for (Vertex v = 0; v < n_; ++v) {
            if (placed >> v & 1U) continue;
            // Every placed neighbor must lie inside the window.
            bool fits = true;
            for (std::size_t i = 0; i < window && fits; ++i)
                if (adj_[static_cast<std::size_t>(v)] >> order_[i] & 1U) fits = false;
            if (!fits) continue;
            order_.push_back(v);
            if (extend(placed | Mask{1} << v)) return true;
            order_.pop_back();
        }
        failed_.insert({placed, std::move(key)});
        return false;
    }

    int n_;
    int k_;
    std::vector<Mask> adj_;
    std::vector<Vertex> order_;
    std::set<std::pair<Mask, std::vector<Vertex>>> failed_;
};

// Vertices outside `s` and v that v reaches through s.
int reach_count(const std::vector<Mask>& adj, Mask s, Vertex v) {
    Mask seen = Mask{1} << v;
    Mask frontier = seen;
    Mask outside = 0;
    while (frontier) {
        const int u = std::countr_zero(frontier);
        frontier &= frontier - 1;
        const Mask nb = adj[static_cast<std::size_t>(u)] & ~seen;
        seen |= nb;
        outside |= nb & ~s;
        frontier |= nb & s;
    }
    return std::popcount(outside);
}

// Subset tables need 2^n entries, whatever the configured cap.
constexpr int kSubsetTableCeiling = 24;

void check_table_size(const char* what, int n) {
    if (n > kSubsetTableCeiling) throw SizeLimitExceeded(what, n, kSubsetTableCeiling);
}

}  // namespace

int bandwidth(const Graph& g) {
    check_vertex_limit("bandwidth", g.vertex_count(), kWidthVertexCap);
    if (g.vertex_count() > 32) throw SizeLimitExceeded("bandwidth", g.vertex_count(), 32);
    if (g.edge_count() == 0) return 0;
    int lower = 1;
    for (Vertex v = 0; v < g.vertex_count(); ++v) lower = std::max(lower, (g.degree(v) + 1) / 2);
    for (int k = lower; k < g.vertex_count(); ++k)
        if (BandwidthSearch(g, k).run()) return k;
    return g.vertex_count() - 1;
}

int pathwidth(const Graph& g) {
    const int n = g.vertex_count();
    check_vertex_limit("pathwidth", n, kWidthVertexCap);
    check_table_size("pathwidth", n);
    if (n == 0) return 0;
    const auto adj = neighbor_masks(g);
    const Mask all = (Mask{1} << n) - 1;
    std::vector<int> best(std::size_t{1} << n, 0);
    for (Mask s = 1; s <= all; ++s) {
        int boundary = 0;
        for (Mask rest = s; rest; rest &= rest - 1)
            if (adj[static_cast<std::size_t>(std::countr_zero(rest))] & ~s) ++boundary;
        int inner = n;
        for (Mask rest = s; rest; rest &= rest - 1) inner = std::min(inner, best[s & ~(rest & (0U - rest))]);
        best[s] = std::max(boundary, inner);
        if (s == all) break;
    }
    return best[all];
}

int treewidth(const Graph& g) {
    const int n = g.vertex_count();
    check_vertex_limit("treewidth", n, kWidthVertexCap);
    check_table_size("treewidth", n);
    if (n == 0) return 0;
    const auto adj = neighbor_masks(g);
    const Mask all = (Mask{1} << n) - 1;
    // best[s]: the width needed to eliminate s first, in some order.
    std::vector<int> best(std::size_t{1} << n, 0);
    for (Mask s = 1; s <= all; ++s) {
        int value = n;
        for (Mask rest = s; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const Mask before = s & ~(Mask{1} << v);
            value = std::min(value, std::max(best[before], reach_count(adj, before, v)));
        }
        best[s] = value;
        if (s == all) break;
    }
    return best[all];
}

bool is_star_coloring(const Graph& g, const std::vector<int>& colors) {
    if (colors.size() != static_cast<std::size_t>(g.vertex_count())) return false;
    for (const auto& e : g.edges())
        if (colors[static_cast<std::size_t>(e.u)] == colors[static_cast<std::size_t>(e.v)]) return false;
    // Some a-b-c-d path with color(a) = color(c) and color(b) = color(d).
    for (Vertex b = 0; b < g.vertex_count(); ++b)
        for (Vertex c : g.neighbors(b))
            for (Vertex a : g.neighbors(b)) {
                if (a == c || colors[static_cast<std::size_t>(a)] != colors[static_cast<std::size_t>(c)]) continue;
                for (Vertex d : g.neighbors(c))
                    if (d != b && d != a && colors[static_cast<std::size_t>(d)] == colors[static_cast<std::size_t>(b)])
                        return false;
            }
    return true;
}

namespace {

class StarColoringSearch {
public:
    StarColoringSearch(const Graph& g, int colors)
        : g_(g), k_(colors), color_(static_cast<std::size_t>(g.vertex_count()), -1) {}

    bool run() { return assign(0, 0); }
    const std::vector<int>& colors() const { return color_; }

private:
    int color(Vertex v) const { return color_[static_cast<std::size_t>(v)]; }

    // Rejects a two-colored path on four vertices through the newly colored v.
    bool locally_valid(Vertex v) const {
        const int a = color(v);
        for (Vertex u : g_.neighbors(v)) {
            const int b = color(u);
            if (b == a) return false;
            if (b < 0) continue;
            // Paths w-v-u-x with v inside.
            int v_side = 0;
            for (Vertex w : g_.neighbors(v))
                if (w != u && color(w) == b) ++v_side;
            int u_side = 0;
            for (Vertex w : g_.neighbors(u))
                if (w != v && color(w) == a) ++u_side;
            if (v_side > 0 && u_side > 0) return false;
            // Paths v-u-w-x with w colored a and x colored b.
            for (Vertex w : g_.neighbors(u)) {
                if (w == v || color(w) != a) continue;
                for (Vertex x : g_.neighbors(w))
                    if (x != u && color(x) == b) return false;
            }
        }
        return true;
    }

    bool assign(Vertex v, int used) {
        if (v == g_.vertex_count()) return true;
        for (int c = 0; c < std::min(used + 1, k_); ++c) {
            color_[static_cast<std::size_t>(v)] = c;
            if (locally_valid(v) && assign(v + 1, std::max(used, c + 1))) return true;
        }
        color_[static_cast<std::size_t>(v)] = -1;
        return false;
    }

    const Graph& g_;
    int k_;
    std::vector<int> color_;
};

}  // namespace

std::optional<std::vector<int>> star_coloring_within(const Graph& g, int max_colors) {
    check_vertex_limit("star coloring", g.vertex_count(), kStarColoringVertexCap);
    if (g.vertex_count() == 0) return std::vector<int>{};
    if (max_colors < 1) return std::nullopt;
    StarColoringSearch search(g, max_colors);
    if (!search.run()) return std::nullopt;
    return search.colors();
}

int star_chromatic_number(const Graph& g) {
    check_vertex_limit("star chromatic number", g.vertex_count(), kStarColoringVertexCap);
    for (int k = 0;; ++k)
        if (star_coloring_within(g, k)) return k;
}

}  // namespace fotrans
