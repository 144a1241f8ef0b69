#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fotrans/formula.hpp"
#include "fotrans/graph.hpp"

namespace fotrans {

using Assignment = std::map<std::string, Vertex>;
using Tuple = std::vector<Vertex>;

/// A formula compiled against one colored graph. Variables are resolved to slots and
/// predicates to membership flags; distances are computed once at construction when the
/// formula uses them. The graph must outlive the evaluator. Evaluation is const and
/// reentrant, so one evaluator may be shared across threads.
class Evaluator {
public:
    /// `free_order` fixes the positions of the free variables in the tuples passed to
    /// operator(); it must cover every free variable of `f`. Predicates missing from `g`
    /// read as empty.
    Evaluator(const ColoredGraph& g, const Formula& f, std::vector<std::string> free_order);

    bool operator()(std::span<const Vertex> values) const;
    bool holds() const { return (*this)(std::span<const Vertex>{}); }

    std::size_t arity() const noexcept { return arity_; }

private:
    struct Op {
        FormulaKind kind;
        int a = 0;  // slot, or predicate index
        int b = 0;  // slot
        int radius = 0;
        int lhs = -1;
        int rhs = -1;
    };

    int compile(const Formula& f, std::map<std::string, std::vector<int>>& scope,
                const std::map<std::string, int>& predicate_index);
    bool eval(int op, Vertex* env) const;

    const Graph* graph_;
    std::vector<Op> ops_;
    std::vector<std::vector<char>> predicates_;
    DistanceMatrix distances_;
    std::size_t arity_ = 0;
    int slots_ = 0;
    int root_ = -1;
};

/// Standard satisfaction; every free variable of f must be assigned a vertex of g.
bool evaluate(const ColoredGraph& g, const Formula& f, const Assignment& assignment);

/// All tuples over V(g)^|vars| satisfying f, in lexicographic order. `vars` must contain
/// every free variable of f.
std::vector<Tuple> solution_set(const ColoredGraph& g, const Formula& f, const std::vector<std::string>& vars);

/// Free variables in sorted order.
std::vector<std::string> sorted_free_variables(const Formula& f);

}  // namespace fotrans
