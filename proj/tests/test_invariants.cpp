#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include "fotrans/corpus.hpp"
#include "fotrans/errors.hpp"
#include "fotrans/generators.hpp"
#include "fotrans/graph_ops.hpp"
#include "fotrans/parser.hpp"
#include "fotrans/patterns.hpp"
#include "fotrans/widths.hpp"
#include "oracles.hpp"

using namespace fotrans;

namespace {

const char* kMarkedB = "all z. (B(z) -> (E(z,y) -> E(z,x)))";

ColoredGraph half_graph_with_b(int n) {
    std::vector<Vertex> b;
    for (int j = 0; j < n; ++j) b.push_back(n + j);
    return ColoredGraph(half_graph(n), {{"B", VertexSubset(b)}});
}

// Every sequence of n single vertices, as an n-digit counter.
bool for_each_sequence(int vertices, int n, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> s(static_cast<std::size_t>(n), 0);
    if (vertices == 0) return n == 0 && fn(s);
    while (true) {
        if (fn(s)) return true;
        int i = 0;
        while (i < n && ++s[static_cast<std::size_t>(i)] == vertices) s[static_cast<std::size_t>(i++)] = 0;
        if (i == n) return false;
    }
}

bool brute_half_graph(const ColoredGraph& g, const Formula& phi, int n) {
    return for_each_sequence(g.vertex_count(), 2 * n, [&](const std::vector<int>& s) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (oracle::satisfies(g, phi, {{"x", s[static_cast<std::size_t>(i)]}, {"y", s[static_cast<std::size_t>(n + j)]}}) !=
                    (i <= j))
                    return false;
        return true;
    });
}

bool brute_order(const ColoredGraph& g, const Formula& phi, int n) {
    return for_each_sequence(g.vertex_count(), n, [&](const std::vector<int>& s) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && oracle::satisfies(g, phi, {{"x", s[static_cast<std::size_t>(i)]}, {"y", s[static_cast<std::size_t>(j)]}}) !=
                                  (i < j))
                    return false;
        return true;
    });
}

bool brute_independence(const ColoredGraph& g, const Formula& phi, int n) {
    return for_each_sequence(g.vertex_count(), n, [&](const std::vector<int>& a) {
        std::set<int> patterns;
        for (int b = 0; b < g.vertex_count(); ++b) {
            int mask = 0;
            for (int i = 0; i < n; ++i)
                if (oracle::satisfies(g, phi, {{"x", a[static_cast<std::size_t>(i)]}, {"y", b}})) mask |= 1 << i;
            patterns.insert(mask);
        }
        return static_cast<int>(patterns.size()) == (1 << n);
    });
}

Graph random_small(std::mt19937_64& rng, int max_n) {
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
    static const double densities[] = {0.2, 0.4, 0.6};
    return random_graph(n, densities[rng() % 3], rng);
}

}  // namespace

TEST_CASE("bandwidth examples") {
    CHECK(bandwidth(path(6)) == 1);
    CHECK(bandwidth(cycle(4)) == 2);
    CHECK(bandwidth(power(path(6), 3)) == 3);
    CHECK(bandwidth(edgeless(5)) == 0);
    CHECK(bandwidth(Graph()) == 0);
    CHECK(bandwidth(complete(5)) == 4);
    CHECK_THROWS_AS(bandwidth(path(13)), SizeLimitExceeded);
}

TEST_CASE("bandwidth of path powers") {
    for (int n = 2; n <= 8; ++n)
        for (int l = 1; l + 2 <= n + 1 && l < n; ++l) CHECK(bandwidth(power(path(n), l)) == l);
}

TEST_CASE("pathwidth examples") {
    CHECK(pathwidth(path(6)) == 1);
    CHECK(pathwidth(cycle(4)) == 2);
    CHECK(pathwidth(complete(4)) == 3);
    CHECK(pathwidth(edgeless(3)) == 0);
}

TEST_CASE("treewidth examples") {
    CHECK(treewidth(cycle(5)) == 2);
    CHECK(treewidth(complete(4)) == 3);
    CHECK(treewidth(star(5)) == 1);
    CHECK(treewidth(complete_binary_tree(2)) == 1);
    CHECK(treewidth(path(2)) == 1);
    CHECK(treewidth(grid(3, 3)) == 3);
    std::mt19937_64 rng(20);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(rng() % 11);
        std::vector<int> label(static_cast<std::size_t>(n));
        std::iota(label.begin(), label.end(), 0);
        std::shuffle(label.begin(), label.end(), rng);
        std::vector<Edge> edges;
        for (int v = 1; v < n; ++v)
            edges.emplace_back(label[static_cast<std::size_t>(v)], label[rng() % static_cast<unsigned>(v)]);
        CHECK(treewidth(Graph(n, edges)) == 1);
    }
}

TEST_CASE("widths agree with permutation oracles") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 120; ++i) {
        const Graph g = random_small(rng, 7);
        CHECK(bandwidth(g) == oracle::bandwidth(g));
        CHECK(pathwidth(g) == oracle::pathwidth(g));
        CHECK(treewidth(g) == oracle::treewidth(g));
    }
}

TEST_CASE("width chain on random graphs up to 10 vertices") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        const Graph g = random_small(rng, 10);
        const int tw = treewidth(g), pw = pathwidth(g), bw = bandwidth(g);
        CHECK(tw <= pw);
        CHECK(pw <= bw);
    }
}

TEST_CASE("star chromatic number") {
    CHECK(star_chromatic_number(edgeless(5)) == 1);
    CHECK(star_chromatic_number(complete(3)) == 3);
    CHECK(star_chromatic_number(path(4)) == 3);
    CHECK(star_chromatic_number(Graph()) == 0);
    CHECK(star_chromatic_number(star(6)) == 2);
    CHECK(star_chromatic_number(cycle(5)) == oracle::star_chromatic_number(cycle(5)));
    CHECK(star_chromatic_number(cycle(5)) == 4);
    CHECK_THROWS_AS(star_chromatic_number(path(15)), SizeLimitExceeded);

    std::mt19937_64 rng(23);
    for (int i = 0; i < 80; ++i) {
        const Graph g = random_small(rng, 7);
        const int chi_st = star_chromatic_number(g);
        CHECK(chi_st == oracle::star_chromatic_number(g));
        CHECK(chi_st >= oracle::chromatic_number(g));
        const auto coloring = star_coloring_within(g, chi_st);
        REQUIRE(coloring.has_value());
        CHECK(oracle::is_star_coloring(g, *coloring));
        if (chi_st > 0) CHECK_FALSE(star_coloring_within(g, chi_st - 1).has_value());
    }
}

TEST_CASE("is_star_coloring matches the oracle") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 300; ++i) {
        const Graph g = random_small(rng, 7);
        std::vector<int> c(static_cast<std::size_t>(g.vertex_count()));
        for (auto& x : c) x = static_cast<int>(rng() % 3);
        CHECK(is_star_coloring(g, c) == oracle::is_star_coloring(g, c));
    }
    CHECK_FALSE(is_star_coloring(path(4), {0, 1, 0, 1}));
    CHECK(is_star_coloring(path(4), {0, 1, 2, 0}));
}

TEST_CASE("vertex cap override") {
    setenv("FOTRANS_MAX_VERTICES", "13", 1);
    CHECK(bandwidth(path(13)) == 1);
    unsetenv("FOTRANS_MAX_VERTICES");
    CHECK_THROWS_AS(bandwidth(path(13)), SizeLimitExceeded);
}

TEST_CASE("half-graph pattern") {
    const Formula e = parse_formula("E(x,y)");
    const HalfGraphResult h3 = half_graph_pattern_max(half_graph(3), e, 4);
    CHECK(h3.size == 3);
    CHECK(verify_pattern(half_graph(3), e, h3.witness));
    CHECK(half_graph_pattern_max(edgeless(6), e, 4).size == 0);
    CHECK(half_graph_pattern_max(path(8), e, 4).size == 2);
    for (int n = 1; n <= 5; ++n) {
        const HalfGraphResult r = half_graph_pattern_max(half_graph(n), e, n);
        CHECK(r.size == n);
        CHECK(verify_pattern(half_graph(n), e, r.witness));
    }
    CHECK(half_graph_pattern_max(half_graph(4), e, 2).size == 2);
    CHECK_THROWS_AS(half_graph_pattern_max(half_graph(4), e, 4, PatternOptions{false, false, 3}), BudgetExceeded);
}

TEST_CASE("half-graph pattern agrees with brute force") {
    std::mt19937_64 rng(25);
    const Formula e = parse_formula("E(x,y)");
    for (int i = 0; i < 40; ++i) {
        const ColoredGraph g(random_small(rng, 5));
        const int found = half_graph_pattern_max(g, e, 3).size;
        for (int n = 1; n <= 3; ++n) CHECK(brute_half_graph(g, e, n) == (found >= n));
    }
}

TEST_CASE("order property") {
    const Formula marked = parse_formula(kMarkedB);
    const auto w = order_property_n(half_graph_with_b(3), marked, 1, 3);
    REQUIRE(w.has_value());
    CHECK(verify_pattern(half_graph_with_b(3), marked, *w));
    CHECK(w->a_tuples == std::vector<Tuple>{{0}, {1}, {2}});

    CHECK(order_property_n(edgeless(4), Formula::falsity(), 1, 1).has_value());
    CHECK(order_property_n(edgeless(4), Formula::falsity(), 1, 1, PatternOptions{false, true}).has_value());
    CHECK_FALSE(order_property_n(edgeless(4), parse_formula("E(x,y)"), 1, 2).has_value());
    for (int n = 2; n <= 5; ++n)
        for (int size = 1; size <= 4; ++size) {
            CHECK_FALSE(order_property_n(ColoredGraph(edgeless(size), {{"B", VertexSubset{0}}}), marked, 1, n).has_value());
            CHECK_FALSE(order_property_n(edgeless(size), marked, 1, n).has_value());
        }

    // Prefixes of a witness are witnesses.
    for (std::size_t k = 1; k <= w->a_tuples.size(); ++k) {
        PatternWitness prefix = *w;
        prefix.a_tuples.resize(k);
        CHECK(verify_pattern(half_graph_with_b(3), marked, prefix));
    }
    CHECK_THROWS_AS(order_property_n(half_graph(5), marked, 1, 7), BudgetExceeded);
}

TEST_CASE("order property with pairs") {
    // Two-vertex tuples ordered by x1 < y1 on a path read through distance.
    const Formula phi = parse_formula("E(x1,y1) & E(x2,y2)");
    CHECK(order_property_n(path(3), phi, 2, 1).has_value());
    const Formula order = parse_formula("E(x1,y2)");
    const auto w = order_property_n(half_graph(3), order, 2, 3);
    if (w) CHECK(verify_pattern(half_graph(3), order, *w));
    CHECK_THROWS_AS(order_property_n(path(3), parse_formula("E(x,y)"), 2, 1), InputError);
}

TEST_CASE("order property agrees with brute force") {
    std::mt19937_64 rng(26);
    const std::vector<Formula> formulas = {parse_formula("E(x,y)"), parse_formula("dist(x,y) <= 2 & !x = y"),
                                           parse_formula(kMarkedB)};
    for (int i = 0; i < 40; ++i) {
        ColoredGraph g(random_small(rng, 5));
        g = g.with_predicate("B", VertexSubset::from_mask(rng(), g.vertex_count()));
        for (const auto& phi : formulas)
            for (int n = 1; n <= 3; ++n) {
                const auto w = order_property_n(g, phi, 1, n);
                CHECK(w.has_value() == brute_order(g, phi, n));
                if (w) CHECK(verify_pattern(g, phi, *w));
            }
    }
}

TEST_CASE("independence property") {
    const Formula e = parse_formula("E(x,y)");
    const auto w = independence_property_n(powerset_bipartite(3), e, 3);
    REQUIRE(w.has_value());
    CHECK(w->b_tuples.size() == 8);
    CHECK(verify_pattern(powerset_bipartite(3), e, *w));
    CHECK_FALSE(independence_property_n(edgeless(8), e, 1).has_value());

    const auto k4 = independence_property_n(complete(4), e, 1);
    REQUIRE(k4.has_value());
    CHECK(verify_pattern(complete(4), e, *k4));
    CHECK(k4->b_tuples[0] == k4->a_tuples[0]);
    CHECK_FALSE(independence_property_n(complete(4), e, 1, PatternOptions{true}).has_value());

    std::mt19937_64 rng(27);
    for (int i = 0; i < 40; ++i) {
        const ColoredGraph g(random_small(rng, 6));
        for (int n = 1; n <= 2; ++n) {
            const auto r = independence_property_n(g, e, n);
            CHECK(r.has_value() == brute_independence(g, e, n));
            if (r) CHECK(verify_pattern(g, e, *r));
        }
    }
}

TEST_CASE("distinct witnesses") {
    const Formula e = parse_formula("E(x,y)");
    const PatternOptions distinct{true};
    const HalfGraphResult r = half_graph_pattern_max(half_graph(3), e, 3, distinct);
    CHECK(r.size == 3);
    CHECK(verify_pattern(half_graph(3), e, r.witness, distinct));
    const auto w = independence_property_n(powerset_bipartite(2), e, 2, distinct);
    REQUIRE(w.has_value());
    CHECK(verify_pattern(powerset_bipartite(2), e, *w, distinct));
}

TEST_CASE("witness formatting") {
    PatternWitness w{PatternKind::HalfGraph, {{0}, {1}}, {{2}, {3}}};
    CHECK(format_witness(w) == "a=0,1 b=2,3");
    PatternWitness pairs{PatternKind::Order, {{0, 1}, {2, 3}}, {}};
    CHECK(format_witness(pairs) == "a=0:1,2:3");
}
