#include <doctest.h>

#include <random>

#include "fotrans/corpus.hpp"
#include "fotrans/errors.hpp"
#include "fotrans/generators.hpp"
#include "fotrans/graph_ops.hpp"
#include "fotrans/parser.hpp"
#include "fotrans/transduction.hpp"
#include "oracles.hpp"

using namespace fotrans;

namespace {

Transduction complement_m() { return Transduction{{ComplementStep{"M"}}}; }
Transduction expand_complement_m() { return Transduction{{ExpandStep{{"M"}}, ComplementStep{"M"}}}; }
Transduction identity() { return Transduction{{InterpretStep{Interpretation::identity()}}}; }

// Toggles every pair inside the mask, directly on edge lists.
Graph toggle(const Graph& g, std::uint64_t mask) {
    std::vector<Edge> edges;
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const bool inside = (mask >> u & 1) && (mask >> v & 1);
            if (g.adjacent(u, v) != inside) edges.emplace_back(u, v);
        }
    return Graph(n, edges);
}

}  // namespace

TEST_CASE("subset complementation") {
    ColoredGraph p3(path(3), {{"M", VertexSubset{0, 2}}});
    CHECK(apply_with_coloring(complement_m(), p3, {}).graph() == complete(3));
    CHECK(apply_with_coloring(compose(complement_m(), complement_m()), p3, {}).graph() == path(3));
    CHECK_THROWS_AS(apply_with_coloring(complement_m(), ColoredGraph(path(3)), {}), TransductionError);
}

TEST_CASE("identity interpretation") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 20; ++i) {
        ColoredGraph g(random_graph(6, 0.5, rng));
        CHECK(apply_with_coloring(identity(), g, {}).graph() == g.graph());
    }
}

TEST_CASE("interpretations are symmetric and irreflexive") {
    Interpretation directed(Formula::truth(), parse_formula("M(x) & !M(y) | x=y"));
    ColoredGraph g(edgeless(4), {{"M", VertexSubset{0, 1}}});
    Graph h = directed.apply(g).graph();
    CHECK(h == Graph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
    CHECK_THROWS_AS(Interpretation(Formula::truth(), parse_formula("E(x,z)")), TransductionError);
    CHECK_THROWS_AS(Interpretation(parse_formula("E(x,y)"), Formula::truth()), TransductionError);
}

TEST_CASE("interpretation domain and carried predicates") {
    Interpretation keep_marked(parse_formula("M(v)"), parse_formula("E(x,y)"));
    ColoredGraph g(path(4), {{"M", VertexSubset{1, 2, 3}}, {"N", VertexSubset{0, 3}}});
    std::vector<Vertex> kept;
    ColoredGraph h = keep_marked.apply(g, kept);
    CHECK(kept == std::vector<Vertex>{1, 2, 3});
    CHECK(h.graph() == path(3));
    CHECK(h.predicate("N") == VertexSubset{2});
}

TEST_CASE("apply checks choice arity") {
    CHECK_THROWS_AS(apply_with_coloring(expand_complement_m(), ColoredGraph(path(2)), {}), TransductionError);
    CHECK_THROWS_AS(apply_with_coloring(expand_complement_m(), ColoredGraph(path(2)), {VertexSubset{5}}), TransductionError);
    CHECK(apply_with_coloring(expand_complement_m(), ColoredGraph(path(2)), {VertexSubset{0, 1}}).graph() == edgeless(2));
}

TEST_CASE("output sets") {
    CHECK(output_set(identity(), ColoredGraph(path(3))).size() == 1);
    CHECK(output_set(expand_complement_m(), ColoredGraph(complete(1))) == std::set<Graph>{complete(1)});
    CHECK(output_set(expand_complement_m(), ColoredGraph(path(2))) == std::set<Graph>{path(2), edgeless(2)});
    CHECK_THROWS_AS(output_set(expand_complement_m(), ColoredGraph(path(21))), BudgetExceeded);
    try {
        output_set(expand_complement_m(), ColoredGraph(path(3)), 4);
        FAIL("expected budget error");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == 8.0);
        CHECK(e.budget() == 4);
    }
}

TEST_CASE("perturbation output sets match direct toggling") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 25; ++i) {
        Graph g = random_graph(1 + static_cast<int>(rng() % 5), 0.5, rng);
        std::set<Graph> expected;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.vertex_count()); ++mask) expected.insert(toggle(g, mask));
        CHECK(output_set(perturbation({"M"}), ColoredGraph(g)) == expected);
        CHECK(output_set(perturbation({"M", "N"}), ColoredGraph(g)).size() <= std::size_t{1} << (2 * g.vertex_count()));
    }
}

TEST_CASE("perturbation") {
    CHECK(output_set(perturbation({"M"}), ColoredGraph(path(2))) == std::set<Graph>{path(2), edgeless(2)});
    CHECK(perturbation({}).steps.empty());
    CHECK(output_set(perturbation({}), ColoredGraph(path(3))) == std::set<Graph>{path(3)});
    std::mt19937_64 rng(3);
    Graph c = random_graph(5, 0.5, rng);
    CHECK(apply_with_coloring(perturbation({"M"}), ColoredGraph(c), {VertexSubset::all(5)}).graph() == complement(c));
}

TEST_CASE("unread expand predicates do not change output sets") {
    std::mt19937_64 rng(79);
    Transduction extra = perturbation({"M"});
    extra.steps.insert(extra.steps.begin(), ExpandStep{{"Unused"}});
    for (int i = 0; i < 10; ++i) {
        ColoredGraph g(random_graph(4, 0.5, rng));
        CHECK(output_set(extra, g) == output_set(perturbation({"M"}), g));
    }
}

TEST_CASE("witness search") {
    ColoredGraph p3(path(3));
    WitnessResult same = witness_search(identity(), p3, path(3));
    CHECK(same.found);
    CHECK(same.choices.empty());
    REQUIRE(same.coloring);
    CHECK(*same.coloring == p3);

    WitnessResult tri = witness_search(expand_complement_m(), p3, complete(3));
    CHECK(tri.found);
    REQUIRE(tri.choices.size() == 1);
    CHECK(tri.choices[0] == VertexSubset{0, 2});
    CHECK(tri.coloring->predicate("M") == VertexSubset{0, 2});
    CHECK(apply_with_coloring(expand_complement_m(), p3, tri.choices).graph() == complete(3));

    WitnessResult none = witness_search(identity(), p3, complete(3));
    CHECK_FALSE(none.found);
    CHECK(none.colorings_tried == 1);

    CHECK_FALSE(witness_search(identity(), p3, Graph(3, {{0, 2}, {1, 2}})).found);
    CHECK(witness_search(identity(), p3, Graph(3, {{0, 2}, {1, 2}}), kDefaultBudget, true).found);
    CHECK_THROWS_AS(witness_search(identity(), ColoredGraph(path(11)), path(11), kDefaultBudget, true), SizeLimitExceeded);
}

TEST_CASE("found witnesses replay exactly") {
    std::mt19937_64 rng(83);
    Transduction t = perturbation({"M", "N"});
    for (int i = 0; i < 30; ++i) {
        ColoredGraph g(random_graph(4, 0.5, rng));
        std::vector<Graph> outs;
        for (const Graph& h : output_set(t, g)) outs.push_back(h);
        const Graph& target = outs[rng() % outs.size()];
        WitnessResult w = witness_search(t, g, target);
        REQUIRE(w.found);
        CHECK(apply_with_coloring(t, g, w.choices).graph() == target);
    }
}

TEST_CASE("composition") {
    ColoredGraph p2(path(2));
    for (const Transduction& t : {expand_complement_m(), perturbation({"M", "N"}), identity()})
        CHECK(output_set(compose(identity(), t), p2) == output_set(t, p2));
    ColoredGraph marked(path(4), {{"M", VertexSubset{0, 1, 3}}});
    CHECK(apply_with_coloring(compose(complement_m(), complement_m()), marked, {}).graph() == path(4));
    CHECK(compose(Transduction{{ExpandStep{{"M"}}}}, complement_m()) == expand_complement_m());

    Transduction copy2{{CopyStep{2}}};
    CHECK(compose(copy2, identity()).is_normalized());
    CHECK_FALSE(compose(copy2, copy2).is_normalized());
    CHECK_FALSE(compose(identity(), copy2).is_normalized());
}

TEST_CASE("copy step") {
    Transduction t{{CopyStep{2}, InterpretStep{Interpretation(parse_formula("copy_1(x) | copy_2(x)"),
                                                              parse_formula("E(x,y) & (copy_1(x) <-> copy_1(y))"))}}};
    Graph out = apply_with_coloring(t, ColoredGraph(path(3)), {}).graph();
    CHECK(out == disjoint_union(path(3), path(3)));
}

TEST_CASE("subsumption") {
    std::vector<ColoredGraph> corpus{ColoredGraph(path(2)), ColoredGraph(path(3)), ColoredGraph(cycle(4))};
    CHECK(subsumes_on_corpus(expand_complement_m(), expand_complement_m(), corpus).holds);
    CHECK(subsumes_on_corpus(expand_complement_m(), identity(), corpus).holds);
    SubsumptionResult r = subsumes_on_corpus(identity(), expand_complement_m(), {ColoredGraph(path(2))});
    CHECK_FALSE(r.holds);
    CHECK(*r.missing == edgeless(2));
    CHECK(r.input->graph() == path(2));
}

TEST_CASE("distance shrink ratio") {
    CHECK(distance_shrink_ratio(Interpretation::identity(), ColoredGraph(path(5))) == Rational{1, 1});
    Interpretation square(Formula::truth(), parse_formula("dist(x,y)<=2"));
    Rational half = distance_shrink_ratio(square, ColoredGraph(path(5)));
    CHECK(half == Rational{1, 2});
    CHECK(half.to_string() == "1/2");
    Interpretation nothing(Formula::truth(), parse_formula("E(x,y) & false"));
    CHECK_THROWS_AS(distance_shrink_ratio(nothing, ColoredGraph(path(5))), TransductionError);
    Interpretation empty(Formula::falsity(), parse_formula("E(x,y)"));
    CHECK_THROWS_AS(distance_shrink_ratio(empty, ColoredGraph(path(5))), TransductionError);
}

TEST_CASE("distance shrink ratio matches Floyd-Warshall") {
    std::mt19937_64 rng(89);
    Interpretation cube(Formula::truth(), parse_formula("dist(x,y)<=3"));
    for (int i = 0; i < 20; ++i) {
        Graph g = random_graph(7, 0.3, rng);
        auto dg = oracle::floyd_warshall(g);
        auto dh = oracle::floyd_warshall(power(g, 3));
        double best = 2;
        bool any = false;
        for (int u = 0; u < 7; ++u)
            for (int v = u + 1; v < 7; ++v)
                if (dg[u][v] != INT_MAX) {
                    any = true;
                    best = std::min(best, double(dh[u][v]) / dg[u][v]);
                }
        if (!any) continue;
        Rational r = distance_shrink_ratio(cube, ColoredGraph(g));
        CHECK(double(r.num) / double(r.den) == doctest::Approx(best));
    }
}

TEST_CASE("pipeline file format") {
    const std::string text =
        "# pipeline\n"
        "copy 2\n"
        "expand M N\n"
        "interpret nu \"M(x) | copy_1(x)\" eta \"E(x,y) & !N(y)\"\n"
        "complement M\n";
    Transduction t = parse_transduction(text);
    REQUIRE(t.steps.size() == 4);
    CHECK(std::get<CopyStep>(t.steps[0]).copies == 2);
    CHECK(std::get<ExpandStep>(t.steps[1]).names == std::vector<std::string>{"M", "N"});
    CHECK(format_transduction(t) == text.substr(text.find('\n') + 1));
    CHECK(parse_transduction(format_transduction(t)) == t);
    CHECK_THROWS_AS(parse_transduction("copy 0\n"), InputError);
    CHECK_THROWS_AS(parse_transduction("rotate M\n"), InputError);
    CHECK_THROWS_AS(parse_transduction("interpret nu \"true\" eta \"E(x,z)\"\n"), InputError);
    CHECK_THROWS_AS(parse_transduction("interpret nu \"true\n"), InputError);
}

TEST_CASE("subset complementation is an involution") {
    std::mt19937_64 rng(97);
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + static_cast<int>(rng() % 7);
        Graph g = random_graph(n, 0.5, rng);
        VertexSubset m = VertexSubset::from_mask(rng() & ((std::uint64_t{1} << n) - 1), n);
        CHECK(subset_complement(subset_complement(g, m), m) == g);
        std::uint64_t mask = 0;
        for (Vertex v : m) mask |= std::uint64_t{1} << v;
        CHECK(subset_complement(g, m) == toggle(g, mask));
    }
}
