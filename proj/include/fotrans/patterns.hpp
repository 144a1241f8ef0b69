#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fotrans/evaluator.hpp"
#include "fotrans/limits.hpp"

namespace fotrans {

enum class PatternKind { Order, HalfGraph, Independence };

std::string to_string(PatternKind kind);

/// Tuples realizing a pattern. For Independence, b_tuples[J] is the co-tuple of the subset
/// with bitmask J (bit i-1 for a_i), so there are 2^n of them.
struct PatternWitness {
    PatternKind kind = PatternKind::Order;
    std::vector<Tuple> a_tuples;
    std::vector<Tuple> b_tuples;

    bool operator==(const PatternWitness&) const = default;
};

struct PatternOptions {
    /// Require all vertices of the witness to be pairwise distinct.
    bool distinct = false;
    /// Order property only: also require !phi(a_i, a_i).
    bool check_diagonal = false;
    /// Search budget: nominal search space for order and independence, visited nodes for
    /// the half-graph search.
    std::uint64_t budget = kDefaultBudget;
};

/// The two variable blocks phi is read with: x/y for arity 1, x1..xk/y1..yk otherwise.
std::pair<std::vector<std::string>, std::vector<std::string>> pattern_variables(int arity);

struct HalfGraphResult {
    int size = 0;
    /// Empty when size is 0.
    PatternWitness witness;
};

/// Largest n <= cap with vertices a_1..a_n, b_1..b_n such that phi(a_i, b_j) iff i <= j.
HalfGraphResult half_graph_pattern_max(const ColoredGraph& g, const Formula& phi, int cap,
                                       const PatternOptions& options = {});

/// Tuples a_1..a_n of the given arity with phi(a_i, a_j) iff i < j, for i != j.
std::optional<PatternWitness> order_property_n(const ColoredGraph& g, const Formula& phi, int arity, int n,
                                               const PatternOptions& options = {});

/// Vertices a_1..a_n and b_J for every J subset of [n] with phi(a_i, b_J) iff i in J.
std::optional<PatternWitness> independence_property_n(const ColoredGraph& g, const Formula& phi, int n,
                                                      const PatternOptions& options = {});

/// Re-checks a witness against its defining condition.
bool verify_pattern(const ColoredGraph& g, const Formula& phi, const PatternWitness& witness,
                    const PatternOptions& options = {});

/// "a=0,1,2 b=3,4,5"; tuple components are joined with ':'.
std::string format_witness(const PatternWitness& witness);

}  // namespace fotrans
