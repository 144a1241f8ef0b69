#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fotrans/formula.hpp"
#include "fotrans/transduction.hpp"

namespace fotrans {

/// ex x1..xk (chi(x1) & ... & chi(xk) & pairwise dist(xi,xj) > 2r), chi r-local in one variable.
struct BasicLocalSentence {
    int count = 1;
    int radius = 0;
    Formula chi;

    Formula to_formula() const;
    bool operator==(const BasicLocalSentence& other) const {
        return count == other.count && radius == other.radius && chi == other.chi;
    }
};

/// A Boolean combination of local pieces describing a binary formula eta(x,y).
struct GaifmanNode {
    enum class Kind {
        Sentence,    // a basic-local sentence
        UnaryLocal,  // formula in one variable (x or y), declared `radius`-local
        Product,     // disjunction of zeta_i(x) & zeta_j(y)
        Near,        // formula in x, y, declared strongly 2*radius-local
        And,
        Or,
        Not,
    };

    Kind kind = Kind::And;
    BasicLocalSentence sentence;
    std::string variable;
    Formula formula;
    int radius = 0;
    /// Product pairs; the first formula is in x, the second in y.
    std::vector<std::pair<Formula, Formula>> products;
    std::vector<GaifmanNode> children;

    static GaifmanNode make_sentence(BasicLocalSentence s);
    static GaifmanNode make_unary(std::string variable, Formula f, int radius);
    static GaifmanNode make_product(std::vector<std::pair<Formula, Formula>> pairs);
    static GaifmanNode make_near(Formula f, int radius);
    static GaifmanNode make_and(std::vector<GaifmanNode> children);
    static GaifmanNode make_or(std::vector<GaifmanNode> children);
    static GaifmanNode make_not(GaifmanNode child);

    bool operator==(const GaifmanNode&) const = default;
};

/// A Gaifman-form tree together with its locality radius t.
struct GaifmanForm {
    GaifmanNode root;
    int radius = 0;

    /// The plain formula the tree denotes, sentences expanded.
    Formula to_formula() const;
    /// Distinct sentence leaves in depth-first order; the i-th gets the marker T_{i+1}.
    std::vector<BasicLocalSentence> sentences() const;
    /// The tree with x and y exchanged.
    GaifmanForm swapped() const;
    /// Largest radius declared by any leaf (0 when none declares one).
    int max_leaf_radius() const;

    bool operator==(const GaifmanForm&) const = default;
};

/// S-expression syntax:
///   (sentence k r "<chi>") (local x|y t "<f>") (near t "<f>") (product ("<zeta_x>" "<zeta_y>") ...)
///   (and ...) (or ...) (not ...)
GaifmanNode parse_gaifman_node(const std::string& text);
std::string format_gaifman_node(const GaifmanNode& node);

/// A transduction whose edge formula is given as a Gaifman form.
struct GaifmanTransduction {
    int copies = 0;  // 0: no copy step
    std::vector<std::string> signature;
    Formula domain;
    GaifmanForm eta;

    /// The same pipeline with eta expanded to a plain formula.
    Transduction plain() const;
};

// File format: optional `copy <k>`, `expand <names>`, `nu "<formula>"`, `radius <t>` lines,
// then `eta` followed by the s-expression (which may span the rest of the file). Without a
// radius line t is the largest radius declared by a leaf.
GaifmanTransduction read_gaifman_transduction(std::istream& in);
GaifmanTransduction parse_gaifman_transduction(const std::string& text);
std::string format_gaifman_transduction(const GaifmanTransduction& t);

}  // namespace fotrans
