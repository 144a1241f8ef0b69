#include <doctest.h>

#include <random>

#include "fotrans/corpus.hpp"
#include "fotrans/errors.hpp"
#include "fotrans/generators.hpp"
#include "fotrans/normal_form.hpp"
#include "fotrans/parser.hpp"
#include "oracles.hpp"

using namespace fotrans;

namespace {

GaifmanNode node(const std::string& text) { return parse_gaifman_node(text); }

GaifmanTransduction gaifman(const std::string& eta, std::vector<std::string> signature = {}, int copies = 0) {
    GaifmanTransduction t;
    t.copies = copies;
    t.signature = std::move(signature);
    t.domain = Formula::truth();
    t.eta.root = node(eta);
    t.eta.radius = t.eta.max_leaf_radius();
    return t;
}

const char* kComplement = "(not (near 1 \"E(x,y)\"))";
const char* kSentence = R"g((or (and (sentence 2 1 "true") (not (near 1 "E(x,y)")))
                              (and (not (sentence 2 1 "true")) (near 1 "E(x,y)"))))g";
const char* kProduct = R"g((or (product ("M(x)" "!M(y)") ("!M(x)" "M(y)")) (near 1 "E(x,y)")))g";

std::vector<ColoredGraph> plain_corpus(int n) {
    std::vector<ColoredGraph> out;
    for (const auto& g : all_labeled_graphs_up_to(n)) out.emplace_back(g);
    return out;
}

// Reads the tree directly with near leaves false and sentences as marker atoms.
bool far_value(const GaifmanNode& n, const ColoredGraph& g, int x, int y, const std::vector<BasicLocalSentence>& sentences) {
    using K = GaifmanNode::Kind;
    switch (n.kind) {
    case K::Sentence: {
        const auto i = static_cast<std::size_t>(std::find(sentences.begin(), sentences.end(), n.sentence) - sentences.begin());
        return g.predicate(marker_name(i)).contains(x);
    }
    case K::UnaryLocal: return oracle::satisfies(g, n.formula, {{n.variable, n.variable == "x" ? x : y}});
    case K::Near: return false;
    case K::Product:
        for (const auto& [zx, zy] : n.products)
            if (oracle::satisfies(g, zx, {{"x", x}}) && oracle::satisfies(g, zy, {{"y", y}})) return true;
        return false;
    case K::Not: return !far_value(n.children[0], g, x, y, sentences);
    case K::And:
        for (const auto& c : n.children)
            if (!far_value(c, g, x, y, sentences)) return false;
        return true;
    case K::Or:
        for (const auto& c : n.children)
            if (far_value(c, g, x, y, sentences)) return true;
        return false;
    }
    return false;
}

std::string random_unary(std::mt19937_64& rng, const std::string& v) {
    static const std::vector<std::string> atoms = {"M(#)", "N(#)", "ex z. (E(#,z) & M(z))", "!M(#)", "M(#) & N(#)", "true"};
    std::string a = atoms[rng() % atoms.size()];
    for (auto pos = a.find('#'); pos != std::string::npos; pos = a.find('#')) a.replace(pos, 1, v);
    return a;
}

std::string random_tree(std::mt19937_64& rng, int depth) {
    const int pick = static_cast<int>(rng() % (depth > 0 ? 7 : 4));
    switch (pick) {
    case 0: return "(near 1 \"E(x,y)\")";
    case 1: {
        const std::string v = rng() % 2 ? "x" : "y";
        return "(local " + v + " 1 \"" + random_unary(rng, v) + "\")";
    }
    case 2: return "(product (\"" + random_unary(rng, "x") + "\" \"" + random_unary(rng, "y") + "\"))";
    case 3: return "(sentence 1 1 \"" + random_unary(rng, "x") + "\")";
    case 4: return "(not " + random_tree(rng, depth - 1) + ")";
    case 5: return "(and " + random_tree(rng, depth - 1) + " " + random_tree(rng, depth - 1) + ")";
    default: return "(or " + random_tree(rng, depth - 1) + " " + random_tree(rng, depth - 1) + ")";
    }
}

// Markers (reserved names) hold everywhere or nowhere, as their valuation rule dictates.
std::vector<ColoredGraph> random_colored(std::mt19937_64& rng, int count, const std::vector<std::string>& names) {
    std::vector<ColoredGraph> out;
    for (int i = 0; i < count; ++i) {
        const int n = 1 + static_cast<int>(rng() % 6);
        ColoredGraph g(random_graph(n, 0.4, rng));
        for (const auto& name : names) {
            const bool marker = name.rfind(kMarkerPrefix, 0) == 0;
            g = g.with_predicate(name, marker ? (rng() % 2 ? VertexSubset::all(n) : VertexSubset{}) : VertexSubset::from_mask(rng(), n));
        }
        out.push_back(g);
    }
    return out;
}

}  // namespace

TEST_CASE("eta_tilde replaces sentences by markers") {
    const GaifmanForm plain{node("(near 1 \"E(x,y)\")"), 1};
    CHECK(eta_tilde(plain) == plain.to_formula());
    CHECK(eta_tilde(GaifmanForm{node("(sentence 2 1 \"true\")"), 1}).to_string() == "__T1(x)");
    CHECK(eta_tilde(GaifmanForm{node("(and (sentence 2 1 \"true\") (near 1 \"E(x,y)\"))"), 1}).to_string() ==
          "__T1(x) & E(x,y)");
    const GaifmanForm twice{node(kSentence), 1};
    CHECK(twice.sentences().size() == 1);
    CHECK(eta_tilde(twice).predicate_names() == std::set<std::string>{"__T1"});
}

TEST_CASE("far_formula examples") {
    const FarDecomposition near = far_formula(GaifmanForm{node("(near 1 \"E(x,y)\")"), 1});
    CHECK(near.pairs.empty());
    CHECK(near.formula().kind() == FormulaKind::False);

    const FarDecomposition complement = far_formula(GaifmanForm{node(kComplement), 1});
    REQUIRE(complement.pairs == std::vector<std::pair<int, int>>{{0, 0}});
    CHECK(complement.zetas[0].kind() == FormulaKind::True);
    CHECK(complement.formula().kind() == FormulaKind::True);

    const FarDecomposition product = far_formula(GaifmanForm{node(R"g((product ("M(x)" "N(y)") ("N(x)" "M(y)")))g"), 0});
    REQUIRE(product.zetas.size() == 2);
    CHECK(product.zetas[0] == parse_formula("M(x)"));
    CHECK(product.zetas[1] == parse_formula("N(x)"));
    CHECK(product.pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
}

TEST_CASE("far_formula agrees with the tree read with near leaves false") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 60; ++round) {
        const GaifmanForm gf{node(random_tree(rng, 3)), 1};
        const FarDecomposition far = far_formula(gf);
        const Formula q = far.formula();
        const auto sentences = gf.sentences();
        std::vector<std::string> names = {"M", "N"};
        for (std::size_t i = 0; i < sentences.size(); ++i) names.push_back(marker_name(i));
        for (const auto& g : random_colored(rng, 6, names))
            for (int x = 0; x < g.vertex_count(); ++x)
                for (int y = 0; y < g.vertex_count(); ++y)
                    REQUIRE_MESSAGE(oracle::satisfies(g, q, {{"x", x}, {"y", y}}) == far_value(gf.root, g, x, y, sentences),
                                    format_gaifman_node(gf.root));
    }
}

TEST_CASE("far_formula index set is symmetric for symmetric trees") {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 80; ++round) {
        GaifmanForm gf{node(random_tree(rng, 3)), 1};
        gf = GaifmanForm{GaifmanNode::make_or({gf.root, gf.swapped().root}), 1};
        const FarDecomposition far = far_formula(gf);
        for (const auto& [i, j] : far.pairs)
            CHECK(std::find(far.pairs.begin(), far.pairs.end(), std::make_pair(j, i)) != far.pairs.end());
    }
}

TEST_CASE("cell refinement keeps the disjunction and makes the zetas disjoint") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 60; ++round) {
        GaifmanForm gf{node(random_tree(rng, 3)), 1};
        const FarDecomposition far = far_formula(gf);
        const FarDecomposition cells = refine_to_cells(far);
        const auto sentences = gf.sentences();
        std::vector<std::string> names = {"M", "N"};
        for (std::size_t i = 0; i < sentences.size(); ++i) names.push_back(marker_name(i));
        for (const auto& g : random_colored(rng, 5, names)) {
            for (int v = 0; v < g.vertex_count(); ++v) {
                int hits = 0;
                for (const auto& z : cells.zetas) hits += oracle::satisfies(g, z, {{"x", v}}) ? 1 : 0;
                CHECK(hits <= 1);
            }
            for (int x = 0; x < g.vertex_count(); ++x)
                for (int y = 0; y < g.vertex_count(); ++y)
                    CHECK(oracle::satisfies(g, cells.formula(), {{"x", x}, {"y", y}}) ==
                          oracle::satisfies(g, far.formula(), {{"x", x}, {"y", y}}));
        }
    }
    CHECK_THROWS_AS(refine_to_cells(FarDecomposition{{parse_formula("M(x) & N(x)")}, {{0, 0}}}, 1), SizeLimitExceeded);
}

TEST_CASE("build_psi examples") {
    auto same_edges = [](const Formula& psi, const Formula& expected) {
        for (const auto& g : all_labeled_graphs_up_to(4))
            for (int x = 0; x < g.vertex_count(); ++x)
                for (int y = 0; y < g.vertex_count(); ++y)
                    REQUIRE(oracle::satisfies(g, psi, {{"x", x}, {"y", y}}) ==
                            oracle::satisfies(g, expected, {{"x", x}, {"y", y}}));
    };
    const Formula psi = build_psi(GaifmanForm{node(kComplement), 1});
    CHECK(psi.to_string().find("dist(x,y)<=2") != std::string::npos);
    same_edges(psi, parse_formula("E(x,y)"));
    same_edges(build_psi(GaifmanForm{node("(near 1 \"E(x,y)\")"), 1}), parse_formula("E(x,y)"));
    same_edges(build_psi(GaifmanForm{node(R"g((product ("true" "true")))g"), 1}), Formula::falsity());
}

TEST_CASE("build_Tq examples") {
    CHECK(build_Tq({}, {}).transduction.steps.empty());

    const PerturbationPlan full = build_Tq({{0, 0}}, {Formula::truth()});
    CHECK(full.transduction ==
          Transduction{{ExpandStep{{"__Z1"}}, ComplementStep{"__Z1"}}});
    REQUIRE(full.subsets.size() == 1);
    CHECK(full.subsets[0].zeta.kind() == FormulaKind::True);

    const PerturbationPlan cross = build_Tq({{0, 1}, {1, 0}}, {parse_formula("M(x)"), parse_formula("N(x)")});
    CHECK(cross.transduction == Transduction{{ExpandStep{{"__Z1", "__Z2", "__Z1or2"}}, ComplementStep{"__Z1or2"},
                                              ComplementStep{"__Z1"}, ComplementStep{"__Z2"}}});
    REQUIRE(cross.unions.size() == 1);
    CHECK(cross.unions[0].left == "__Z1");
    CHECK(cross.unions[0].right == "__Z2");

    CHECK_THROWS_AS(build_Tq({{0, 1}}, {Formula::truth(), Formula::truth()}), InputError);
    CHECK_THROWS_AS(build_Tq({{0, 3}, {3, 0}}, {Formula::truth()}), InputError);
}

TEST_CASE("build_Tq toggles exactly the pairs of the index set on disjoint subsets") {
    std::mt19937_64 rng(14);
    for (int round = 0; round < 200; ++round) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<int> cell(static_cast<std::size_t>(n));
        for (auto& c : cell) c = static_cast<int>(rng() % static_cast<unsigned>(k + 1)) - 1;  // -1: no subset
        std::set<std::pair<int, int>> pairs;
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j)
                if (rng() % 2) pairs.insert({i, j}), pairs.insert({j, i});
        const std::vector<std::pair<int, int>> list(pairs.begin(), pairs.end());
        const PerturbationPlan plan = build_Tq(list, std::vector<Formula>(static_cast<std::size_t>(k), Formula::truth()));

        const Graph g = random_graph(n, 0.5, rng);
        std::map<std::string, VertexSubset> z;
        for (int i = 0; i < k; ++i) {
            std::vector<Vertex> members;
            for (int v = 0; v < n; ++v)
                if (cell[static_cast<std::size_t>(v)] == i) members.push_back(v);
            z[subset_name(static_cast<std::size_t>(i))] = VertexSubset(members);
        }
        for (const auto& u : plan.unions) z[u.name] = set_union(z[u.left], z[u.right]);
        std::vector<VertexSubset> choices;
        for (const auto& step : plan.transduction.steps)
            if (const auto* e = std::get_if<ExpandStep>(&step))
                for (const auto& name : e->names) choices.push_back(z[name]);
        const Graph out = apply_with_coloring(plan.transduction, ColoredGraph(g), choices).graph();

        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const int cu = cell[static_cast<std::size_t>(u)];
                const int cv = cell[static_cast<std::size_t>(v)];
                const bool toggled = cu >= 0 && cv >= 0 && pairs.count({cu, cv});
                CHECK(out.adjacent(u, v) == (g.adjacent(u, v) != toggled));
            }
    }
}

TEST_CASE("decompose examples") {
    const NormalFormDecomposition complement = decompose(gaifman(kComplement));
    CHECK(complement.copy_arity == 1);
    CHECK_FALSE(complement.has_copy_step);
    CHECK(complement.markers.empty());
    CHECK(complement.perturbation == Transduction{{ExpandStep{{"__Z1"}}, ComplementStep{"__Z1"}}});
    REQUIRE(complement.immersive.steps.size() == 1);
    const auto& interp = std::get<InterpretStep>(complement.immersive.steps[0]).interpretation;
    for (const auto& g : all_labeled_graphs_up_to(4)) CHECK(interp.apply(g).graph() == g);

    const NormalFormDecomposition identity = decompose(gaifman("(near 1 \"E(x,y)\")"));
    CHECK(identity.perturbation.steps.empty());

    const NormalFormDecomposition sentence = decompose(gaifman(kSentence));
    REQUIRE(sentence.markers.size() == 1);
    CHECK(sentence.markers[0].first == "__T1");
    CHECK(sentence.psi.predicate_names().count("__T1") == 1);
    CHECK(std::get<ExpandStep>(sentence.immersive.steps[0]).names == std::vector<std::string>{"__T1"});

    const NormalFormDecomposition copied = decompose(gaifman("(near 1 \"E(x,y)\")", {}, 2));
    CHECK(copied.has_copy_step);
    CHECK(copied.copy_arity == 2);
    CHECK(std::holds_alternative<CopyStep>(copied.composed().steps[0]));
}

TEST_CASE("decompose rejects malformed inputs") {
    CHECK_THROWS_AS(decompose(gaifman("(near 1 \"E(x,y)\")", {"__T1"})), InputError);
    CHECK_THROWS_AS(decompose(gaifman("(local x 0 \"__Z1(x)\")")), InputError);
    GaifmanTransduction t = gaifman("(near 2 \"dist(x,y)<=4\")");
    t.eta.radius = 1;
    CHECK_THROWS_AS(decompose(t), InputError);
}

TEST_CASE("asymmetric trees are symmetrized") {
    const GaifmanTransduction t = gaifman(R"g((product ("M(x)" "true")))g", {"M"});
    const NormalFormDecomposition d = decompose(t);
    CHECK(d.symmetric_form.root.kind == GaifmanNode::Kind::Or);
    CHECK(verify_decomposition(t, d, plain_corpus(4)).passed);

    const GaifmanTransduction sym = gaifman(kProduct, {"M"});
    CHECK(decompose(sym).symmetric_form == sym.eta);
}

TEST_CASE("verification passes for the worked transductions") {
    const auto corpus5 = plain_corpus(5);
    REQUIRE(corpus5.size() == 1099);

    const GaifmanTransduction complement = gaifman(kComplement);
    const VerificationReport c = verify_decomposition(complement, decompose(complement), corpus5);
    CHECK_MESSAGE(c.passed, c.failure);
    CHECK(c.colorings_checked == 1099);

    const GaifmanTransduction sentence = gaifman(kSentence);
    const VerificationReport s = verify_decomposition(sentence, decompose(sentence), corpus5);
    CHECK_MESSAGE(s.passed, s.failure);

    const GaifmanTransduction product = gaifman(kProduct, {"M"});
    const VerificationReport p = verify_decomposition(product, decompose(product), plain_corpus(4));
    CHECK_MESSAGE(p.passed, p.failure);

    const GaifmanTransduction identity = gaifman("(near 1 \"E(x,y)\")");
    CHECK(verify_decomposition(identity, decompose(identity), plain_corpus(4)).passed);

    const GaifmanTransduction copied =
        gaifman(R"g((or (near 1 "E(x,y)") (product ("copy_1(x)" "copy_2(y)") ("copy_2(x)" "copy_1(y)"))))g", {}, 2);
    const VerificationReport k = verify_decomposition(copied, decompose(copied), plain_corpus(3));
    CHECK_MESSAGE(k.passed, k.failure);
}

TEST_CASE("random trees decompose and verify") {
    std::mt19937_64 rng(15);
    const auto corpus = plain_corpus(3);
    for (int round = 0; round < 25; ++round) {
        const std::string text = random_tree(rng, 2);
        const GaifmanTransduction t = gaifman(text, {"M", "N"});
        const VerificationReport r = verify_decomposition(t, decompose(t), corpus);
        // A random sentence chi may look outside its ball; anything else is a construction bug.
        if (!r.passed) CHECK_MESSAGE(r.failure.rfind("declared locality", 0) == 0, std::string(text + ": " + r.failure));
    }
}

TEST_CASE("blind subsumption agrees with the constructive check") {
    const auto corpus = plain_corpus(3);
    const GaifmanTransduction complement = gaifman(kComplement);
    VerifyOptions options;
    options.blind_subsumption = true;
    CHECK(verify_decomposition(complement, decompose(complement), corpus, options).passed);
    const GaifmanTransduction sentence = gaifman(kSentence);
    CHECK(verify_decomposition(sentence, decompose(sentence), corpus, options).passed);
}

TEST_CASE("mutations are caught") {
    const auto corpus = plain_corpus(4);
    const GaifmanTransduction t = gaifman(kComplement);
    const NormalFormDecomposition good = decompose(t);

    NormalFormDecomposition flipped = good;
    const Formula bad = Formula::conjunction(Formula::negation(Formula::equivalence(eta_tilde(good.symmetric_form),
                                                                                    far_formula(good.symmetric_form).formula())),
                                             Formula::negation(Formula::dist_leq("x", "y", 2)));
    flipped.immersive.steps.back() = InterpretStep{Interpretation(Formula::truth(), bad)};
    const VerificationReport r = verify_decomposition(t, flipped, corpus);
    CHECK_FALSE(r.passed);
    REQUIRE(r.input.has_value());
    REQUIRE(r.expected.has_value());
    REQUIRE(r.actual.has_value());
    CHECK(*r.expected != *r.actual);

    NormalFormDecomposition dropped = good;
    dropped.perturbation.steps.pop_back();
    CHECK_FALSE(verify_decomposition(t, dropped, corpus).passed);

    const GaifmanTransduction product = gaifman(kProduct, {"M"});
    NormalFormDecomposition partial = decompose(product);
    partial.perturbation.steps.erase(partial.perturbation.steps.begin() + 1);
    CHECK_FALSE(verify_decomposition(product, partial, corpus).passed);

    NormalFormDecomposition far_psi = good;
    far_psi.immersive.steps.back() = InterpretStep{Interpretation(Formula::truth(), parse_formula("!E(x,y)"))};
    const VerificationReport nonlocal = verify_decomposition(t, far_psi, corpus);
    CHECK_FALSE(nonlocal.passed);
    CHECK(nonlocal.failure.find("strongly") != std::string::npos);
}

TEST_CASE("wrong leaf declarations are reported") {
    const GaifmanTransduction t = gaifman("(near 1 \"!E(x,y)\")");
    const VerificationReport r = verify_decomposition(t, decompose(t), plain_corpus(3));
    CHECK_FALSE(r.passed);
    CHECK(r.failure.rfind("declared locality", 0) == 0);
}

TEST_CASE("verification respects the budget") {
    const GaifmanTransduction t = gaifman(kProduct, {"M"});
    VerifyOptions options;
    options.budget = 8;
    CHECK_THROWS_AS(verify_decomposition(t, decompose(t), plain_corpus(4), options), BudgetExceeded);
}

TEST_CASE("gaifman s-expressions round-trip") {
    for (const char* text : {kComplement, kSentence, kProduct, "(local y 2 \"ex z. (E(y,z) & M(z))\")"}) {
        const GaifmanNode n = node(text);
        CHECK(node(format_gaifman_node(n)) == n);
    }
    std::mt19937_64 rng(16);
    for (int i = 0; i < 50; ++i) {
        const GaifmanNode n = node(random_tree(rng, 3));
        CHECK(node(format_gaifman_node(n)) == n);
    }
}

TEST_CASE("gaifman s-expression errors") {
    CHECK_THROWS_AS(node("(near 1 \"E(x,y)\""), InputError);
    CHECK_THROWS_AS(node("(bogus)"), InputError);
    CHECK_THROWS_AS(node("(not)"), InputError);
    CHECK_THROWS_AS(node("(near 1 \"E(x,z)\")"), InputError);
    CHECK_THROWS_AS(node("(product (\"M(y)\" \"M(y)\"))"), InputError);
    CHECK_THROWS_AS(node("(sentence 0 1 \"true\")"), InputError);
    try {
        node("(and\n  (near 1 \"E(x,y)\")\n  (wat))");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("gaifman transduction files") {
    const std::string text = "# product example\ncopy 2\nexpand M\nnu \"true\"\nradius 1\neta " + std::string(kProduct) + "\n";
    const GaifmanTransduction t = parse_gaifman_transduction(text);
    CHECK(t.copies == 2);
    CHECK(t.signature == std::vector<std::string>{"M"});
    CHECK(t.eta.radius == 1);
    const GaifmanTransduction again = parse_gaifman_transduction(format_gaifman_transduction(t));
    CHECK(again.copies == t.copies);
    CHECK(again.signature == t.signature);
    CHECK(again.domain == t.domain);
    CHECK(again.eta == t.eta);

    const GaifmanTransduction inferred = parse_gaifman_transduction("eta (near 2 \"dist(x,y)<=4\")");
    CHECK(inferred.eta.radius == 2);
    CHECK(inferred.plain().steps.size() == 1);
    CHECK_THROWS_AS(parse_gaifman_transduction("copy 2\n"), InputError);
}
