#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fotrans/evaluator.hpp"

namespace fotrans {

/// A tuple on which a locality test failed.
struct LocalityWitness {
    ColoredGraph graph;
    std::vector<std::string> variables;
    Tuple tuple;
    bool value_in_graph = false;
    /// Value on the radius-r ball around the tuple; equals value_in_graph when the failure is
    /// a satisfying tuple spread further apart than the radius.
    bool value_in_ball = false;
    std::string reason;
};

/// Result of a corpus-relative locality test. Holding on a corpus is evidence, not a proof.
struct LocalityReport {
    int radius_tested = 0;
    bool holds = true;
    std::optional<LocalityWitness> witness;
    std::size_t tuples_checked = 0;
};

/// Checks G |= f(v) iff B_r(v) |= f(v) for every corpus graph and every tuple v over the
/// free variables (in sorted order unless `variables` is given). For sentences the ball
/// around the empty tuple is the empty graph.
LocalityReport is_r_local_on_corpus(const Formula& f, int radius, std::span<const ColoredGraph> corpus,
                                    std::optional<std::vector<std::string>> variables = std::nullopt);

/// r-locality plus: every satisfying tuple has pairwise distances <= r.
LocalityReport is_strongly_r_local_on_corpus(const Formula& f, int radius, std::span<const ColoredGraph> corpus,
                                             std::optional<std::vector<std::string>> variables = std::nullopt);

}  // namespace fotrans
