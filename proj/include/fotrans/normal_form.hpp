#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fotrans/gaifman.hpp"
#include "fotrans/limits.hpp"
#include "fotrans/locality.hpp"
#include "fotrans/transduction.hpp"

namespace fotrans {

/// Reserved name prefixes for the sentence markers and the complementation subsets.
inline constexpr const char* kMarkerPrefix = "__T";
inline constexpr const char* kSubsetPrefix = "__Z";

std::string marker_name(std::size_t index);  // 0-based index -> "__T<index+1>"
std::string subset_name(std::size_t index);  // 0-based index -> "__Z<index+1>"

/// The far regime of a Gaifman form: for pairs at distance greater than 2t the edge formula
/// agrees with the disjunction of zetas[i](x) & zetas[j](y) over (i, j) in pairs.
struct FarDecomposition {
    /// Formulas in the single free variable x.
    std::vector<Formula> zetas;
    /// 0-based, symmetric, sorted.
    std::vector<std::pair<int, int>> pairs;

    /// The disjunction itself, as a formula in x and y.
    Formula formula() const;
};

/// The tree with every sentence leaf replaced by its marker atom, e.g. "__T1(x)".
Formula eta_tilde(const GaifmanForm& gf);

/// Evaluates the tree with near leaves read as false and distributes the result into a
/// disjunction of products. A sentence leaf reads as T(x) & T(y), which agrees with T(x) when
/// the marker holds everywhere or nowhere. The index set is symmetric when the tree is.
FarDecomposition far_formula(const GaifmanForm& gf);

/// !(eta_tilde <-> far) & dist(x,y) <= 2t.
Formula build_psi(const GaifmanForm& gf);

/// Rewrites a far decomposition over mutually exclusive zetas: every zeta becomes a union of
/// cells, each cell fixing the truth value of every non-Boolean subformula. Cells that occur
/// in no pair are dropped.
FarDecomposition refine_to_cells(const FarDecomposition& far, int max_atoms = 12);

/// Valuation rule of a complementation subset: the vertices satisfying `zeta`.
struct SubsetValuation {
    std::string name;
    Formula zeta;
};
/// Helper subset realized as the union of two subsets.
struct UnionValuation {
    std::string name;
    std::string left;
    std::string right;
};

struct PerturbationPlan {
    Transduction transduction;
    std::vector<SubsetValuation> subsets;
    std::vector<UnionValuation> unions;
};

/// Expand of the subsets the pairs mention (plus union helpers), then the complementation
/// sequence: (+)Z_i for each (i,i), and (+)(Z_i | Z_j) (+)Z_i (+)Z_j for each (i,j) with i < j.
/// Realizes the disjunction of Z_i(x) & Z_j(y) when the Z sets are pairwise disjoint.
PerturbationPlan build_Tq(const std::vector<std::pair<int, int>>& pairs, const std::vector<Formula>& zetas);

struct NormalFormDecomposition {
    /// Copy arity of the source pipeline; 1 when it has no copy step.
    int copy_arity = 1;
    bool has_copy_step = false;
    int radius = 0;
    /// The symmetric edge form the construction ran on.
    GaifmanForm symmetric_form;
    Formula psi;
    /// Expand(signature + markers), Interpret(nu, psi).
    Transduction immersive;
    std::vector<std::string> signature;
    /// Marker name and the sentence it records.
    std::vector<std::pair<std::string, Formula>> markers;
    Transduction perturbation;
    std::vector<SubsetValuation> subsets;
    std::vector<UnionValuation> unions;

    /// Copy (when present), then the immersive part, then the perturbation.
    Transduction composed() const;
};

/// Builds the decomposition. A tree that is not syntactically symmetric in x and y is first
/// replaced by the disjunction of itself and its swap, the adjacency the interpretation defines.
NormalFormDecomposition decompose(const GaifmanTransduction& t);

struct VerifyOptions {
    std::uint64_t budget = kDefaultBudget;
    /// Also run the blind output-set subsumption check.
    bool blind_subsumption = false;
};

struct VerificationReport {
    bool passed = true;
    /// Which check failed and why.
    std::string failure;
    /// The expanded input on which the failure shows.
    std::optional<ColoredGraph> input;
    std::optional<Graph> expected;
    std::optional<Graph> actual;
    std::size_t colorings_checked = 0;
    std::size_t locality_graphs = 0;
};

/// Checks the leaf declarations, the strong 2t-locality of psi (on the corpus expanded in all
/// ways by signature and markers), and, for every corpus graph and every signature coloring,
/// that the decomposition with its valuation rules reproduces the source output exactly.
VerificationReport verify_decomposition(const GaifmanTransduction& t, const NormalFormDecomposition& d,
                                        const std::vector<ColoredGraph>& corpus, const VerifyOptions& options = {});

}  // namespace fotrans
