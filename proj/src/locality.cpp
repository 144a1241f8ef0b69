#include "fotrans/locality.hpp"

#include <map>
#include <memory>

#include "fotrans/graph_ops.hpp"

namespace fotrans {

namespace {

std::string tuple_text(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

struct BallEvaluator {
    BallEvaluator(Restriction<ColoredGraph> b, const Formula& f, const std::vector<std::string>& vars)
        : restriction(std::move(b)), eval(restriction.graph, f, vars) {}

    Restriction<ColoredGraph> restriction;
    Evaluator eval;
};

// Shared driver: visits every tuple of every corpus graph, stopping at the first failure.
LocalityReport check(const Formula& f, int radius, std::span<const ColoredGraph> corpus,
                     std::optional<std::vector<std::string>> variables, bool strong) {
    LocalityReport report;
    report.radius_tested = radius;
    const std::vector<std::string> vars = variables ? *variables : sorted_free_variables(f);
    const std::size_t k = vars.size();
    const ColoredGraph empty;

    for (const ColoredGraph& g : corpus) {
        const int n = g.vertex_count();
        Evaluator whole(g, f, vars);
        std::optional<DistanceMatrix> dist;
        if (strong) dist.emplace(g.graph());
        if (k > 0 && n == 0) continue;

        // Balls only depend on the set of centers; reuse them across permutations.
        std::map<VertexSubset, std::unique_ptr<BallEvaluator>> balls;
        Tuple t(k, 0);
        while (true) {
            ++report.tuples_checked;
            const bool in_graph = whole(t);
            bool in_ball = false;
            if (k == 0) {
                in_ball = Evaluator(empty, f, vars)(t);
            } else {
                VertexSubset centers(t);
                auto it = balls.find(centers);
                if (it == balls.end())
                    it = balls.emplace(centers, std::make_unique<BallEvaluator>(ball(g, centers, radius), f, vars)).first;
                const BallEvaluator& b = *it->second;
                Tuple local(k);
                for (std::size_t i = 0; i < k; ++i) local[i] = b.restriction.local(t[i]);
                in_ball = b.eval(local);
            }
            if (in_graph != in_ball) {
                report.holds = false;
                report.witness = LocalityWitness{g, vars, t, in_graph, in_ball,
                                                 "satisfaction differs between graph and radius-" +
                                                     std::to_string(radius) + " ball at " + tuple_text(t)};
                return report;
            }
            if (strong && in_graph) {
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = i + 1; j < k; ++j)
                        if (dist->at(t[i], t[j]) > radius) {
                            report.holds = false;
                            report.witness = LocalityWitness{
                                g, vars, t, in_graph, in_ball,
                                "satisfying tuple " + tuple_text(t) + " has " + vars[i] + "," + vars[j] +
                                    " at distance greater than " + std::to_string(radius)};
                            return report;
                        }
            }
            std::size_t i = k;
            bool done = (k == 0);
            while (i > 0) {
                --i;
                if (++t[i] < n) break;
                t[i] = 0;
                if (i == 0) done = true;
            }
            if (done) break;
        }
    }
    return report;
}

}  // namespace

LocalityReport is_r_local_on_corpus(const Formula& f, int radius, std::span<const ColoredGraph> corpus,
                                    std::optional<std::vector<std::string>> variables) {
    return check(f, radius, corpus, std::move(variables), false);
}

LocalityReport is_strongly_r_local_on_corpus(const Formula& f, int radius, std::span<const ColoredGraph> corpus,
                                             std::optional<std::vector<std::string>> variables) {
    return check(f, radius, corpus, std::move(variables), true);
}

}  // namespace fotrans
