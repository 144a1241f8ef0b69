#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fotrans/formula.hpp"
#include "fotrans/graph.hpp"
#include "fotrans/limits.hpp"

namespace fotrans {

/// A simple interpretation (nu(x), eta(x,y)). The edge formula is closed under symmetry and
/// irreflexivity on construction: (eta(x,y) | eta(y,x)) & !x=y.
class Interpretation {
public:
    /// nu may use at most the variable x, eta at most x and y.
    Interpretation(Formula domain, Formula edge);

    static Interpretation identity();

    const Formula& domain() const noexcept { return domain_; }
    /// eta as supplied.
    const Formula& raw_edge() const noexcept { return raw_edge_; }
    /// The symmetric, irreflexive edge formula actually evaluated.
    const Formula& edge() const noexcept { return edge_; }

    /// I(g): the vertices satisfying nu in increasing order, joined where eta holds.
    /// Predicates of g are carried over to the kept vertices.
    ColoredGraph apply(const ColoredGraph& g) const;
    /// Like apply(), also reporting the source vertex of each output vertex.
    ColoredGraph apply(const ColoredGraph& g, std::vector<Vertex>& kept) const;

    bool operator==(const Interpretation& other) const {
        return domain_ == other.domain_ && raw_edge_ == other.raw_edge_;
    }

private:
    Formula domain_;
    Formula raw_edge_;
    Formula edge_;
};

struct CopyStep {
    int copies = 1;
    bool operator==(const CopyStep&) const = default;
};
struct ExpandStep {
    std::vector<std::string> names;
    bool operator==(const ExpandStep&) const = default;
};
struct InterpretStep {
    Interpretation interpretation;
    bool operator==(const InterpretStep&) const = default;
};
struct ComplementStep {
    std::string name;
    bool operator==(const ComplementStep&) const = default;
};

using Step = std::variant<CopyStep, ExpandStep, InterpretStep, ComplementStep>;

/// A pipeline of steps run left to right.
struct Transduction {
    std::vector<Step> steps;

    /// At most one Copy step, and only in first position.
    bool is_normalized() const;
    /// Number of predicates introduced by Expand steps, i.e. the length of a choice list.
    std::size_t choice_count() const;

    bool operator==(const Transduction&) const = default;
};

/// Runs t on g. `choices` supplies one subset per Expand-introduced predicate, in step order,
/// each a subset of the vertices of the stage where it is introduced.
ColoredGraph apply_with_coloring(const Transduction& t, const ColoredGraph& g, const std::vector<VertexSubset>& choices);

/// log2 of an upper bound on the number of choice lists for t on g.
std::uint64_t coloring_space_bits(const Transduction& t, const ColoredGraph& g);

/// Calls `visit(choices, output)` for every choice list, in increasing (predicate, vertex)
/// bit order, stopping when `visit` returns false. Throws BudgetExceeded when the coloring
/// space exceeds `budget`.
void for_each_output(const Transduction& t, const ColoredGraph& g, std::uint64_t budget,
                     const std::function<bool(const std::vector<VertexSubset>&, const ColoredGraph&)>& visit);

/// Every output graph over every coloring, labeled-distinct.
std::set<Graph> output_set(const Transduction& t, const ColoredGraph& g, std::uint64_t budget = kDefaultBudget);

struct WitnessResult {
    bool found = false;
    /// The choices that produce the target, one per Expand-introduced predicate.
    std::vector<VertexSubset> choices;
    /// The pipeline stage right after the first Expand step, i.e. the colored graph the
    /// choices were made on; the source itself when the pipeline has no Expand step.
    std::optional<ColoredGraph> coloring;
    std::uint64_t colorings_tried = 0;
};

/// Searches the colorings of `source` for one whose output equals `target`, labeled or (with
/// `up_to_isomorphism`, targets of at most kIsomorphismVertexCap vertices) up to isomorphism.
WitnessResult witness_search(const Transduction& t, const ColoredGraph& source, const Graph& target,
                             std::uint64_t budget = kDefaultBudget, bool up_to_isomorphism = false);

/// Step concatenation. The result is not normalized when Copy appears out of first position.
Transduction compose(const Transduction& first, const Transduction& second);

struct SubsumptionResult {
    bool holds = true;
    std::optional<ColoredGraph> input;
    std::optional<Graph> missing;
};

/// Whether output_set(wide, g) contains output_set(narrow, g) for every corpus graph.
SubsumptionResult subsumes_on_corpus(const Transduction& wide, const Transduction& narrow,
                                     const std::vector<ColoredGraph>& corpus, std::uint64_t budget = kDefaultBudget);

/// Expand(names) followed by one subset complementation per name.
Transduction perturbation(const std::vector<std::string>& names);

/// Toggles adjacency between every pair of distinct vertices of `subset`.
Graph subset_complement(const Graph& g, const VertexSubset& subset);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool operator==(const Rational&) const = default;
    std::string to_string() const;
};

/// Minimum of dist_{I(g)}(u,v) / dist_g(u,v) over distinct kept vertices u, v connected in
/// both graphs. Throws TransductionError when the output is empty or no pair is comparable.
Rational distance_shrink_ratio(const Interpretation& interpretation, const ColoredGraph& g);

// Pipeline file format, one step per line, '#' comments:
//   copy <k>
//   expand <name> [<name>...]
//   interpret nu "<formula>" eta "<formula>"
//   complement <name>
Transduction read_transduction(std::istream& in);
Transduction parse_transduction(const std::string& text);
std::string format_transduction(const Transduction& t);

}  // namespace fotrans
