#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fotrans/graph.hpp"

namespace fotrans {

enum class FormulaKind {
    True,
    False,
    Edge,       // E(x, y)
    Predicate,  // Name(x)
    Equals,     // x = y
    DistLeq,    // dist(x, y) <= r
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,
    Forall,
};

/// Immutable first-order formula over {E} plus unary predicates, with a distance builtin.
/// Copies share structure.
class Formula {
public:
    /// The constant `true`.
    Formula();

    static Formula truth();
    static Formula falsity();
    static Formula edge(std::string x, std::string y);
    static Formula predicate(std::string name, std::string x);
    static Formula equals(std::string x, std::string y);
    static Formula dist_leq(std::string x, std::string y, int radius);
    static Formula negation(Formula f);
    static Formula conjunction(Formula a, Formula b);
    static Formula disjunction(Formula a, Formula b);
    static Formula implication(Formula a, Formula b);
    static Formula equivalence(Formula a, Formula b);
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);

    /// Left-nested conjunction/disjunction; the empty list gives true/false.
    static Formula conjunction(const std::vector<Formula>& parts);
    static Formula disjunction(const std::vector<Formula>& parts);

    FormulaKind kind() const;
    bool is_atom() const;
    bool is_binary() const;
    bool is_quantifier() const;

    /// Predicate name for Predicate nodes, bound variable for quantifiers.
    const std::string& name() const;
    /// First/second variable of an atom.
    const std::string& var(int index) const;
    int radius() const;
    /// Operand of Not and quantifiers, left operand of binary connectives.
    Formula lhs() const;
    Formula rhs() const;

    std::set<std::string> free_variables() const;
    std::set<std::string> predicate_names() const;
    bool uses_distance() const;

    /// Concrete syntax accepted by parse_formula(); parentheses only where precedence needs them.
    std::string to_string() const;

    bool operator==(const Formula& other) const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node);
    static Formula make(Node node);

    std::shared_ptr<const Node> node_;
};

/// Maximal quantifier nesting depth; distance atoms count as 0.
int quantifier_rank(const Formula& f);

/// Quantifier rank with each dist(x,y)<=r atom charged ceil(log2(r+1)), the depth of its
/// expansion by midpoint halving.
int expanded_quantifier_rank(const Formula& f);

/// Replaces free occurrences of `from` by `to`, renaming bound variables that would capture `to`.
Formula rename_free(const Formula& f, const std::string& from, const std::string& to);

/// Exchanges the free variables a and b.
Formula swap_free(const Formula& f, const std::string& a, const std::string& b);

/// Replaces Predicate(name, v) atoms by `replacement` with its single free variable renamed to v.
Formula substitute_predicate(const Formula& f, const std::string& name, const Formula& replacement);

/// Folds true/false through connectives. Quantifiers are kept: over the empty graph
/// "ex v. true" is false.
Formula fold_constants(const Formula& f);

/// zeta_{r,F}(x1..xn): dist(xi,xj)<=r for edges {i,j} of F and its negation for non-edges.
Formula zeta_formula(int radius, const Graph& pattern);

}  // namespace fotrans
