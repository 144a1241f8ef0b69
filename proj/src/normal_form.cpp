#include "fotrans/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "fotrans/corpus.hpp"
#include "fotrans/errors.hpp"
#include "fotrans/evaluator.hpp"
#include "fotrans/graph_ops.hpp"

namespace fotrans {

std::string marker_name(std::size_t index) { return kMarkerPrefix + std::to_string(index + 1); }
std::string subset_name(std::size_t index) { return kSubsetPrefix + std::to_string(index + 1); }

Formula FarDecomposition::formula() const {
    std::vector<Formula> terms;
    for (const auto& [i, j] : pairs)
        terms.push_back(Formula::conjunction(zetas[static_cast<std::size_t>(i)],
                                             rename_free(zetas[static_cast<std::size_t>(j)], "x", "y")));
    return fold_constants(Formula::disjunction(terms));
}

namespace {

using K = GaifmanNode::Kind;

std::size_t sentence_index(const std::vector<BasicLocalSentence>& sentences, const BasicLocalSentence& s) {
    return static_cast<std::size_t>(std::find(sentences.begin(), sentences.end(), s) - sentences.begin());
}

Formula tilde(const GaifmanNode& n, const std::vector<BasicLocalSentence>& sentences) {
    switch (n.kind) {
    case K::Sentence: return Formula::predicate(marker_name(sentence_index(sentences, n.sentence)), "x");
    case K::UnaryLocal:
    case K::Near: return n.formula;
    case K::Product: {
        std::vector<Formula> terms;
        for (const auto& [zx, zy] : n.products) terms.push_back(Formula::conjunction(zx, zy));
        return Formula::disjunction(terms);
    }
    case K::Not: return Formula::negation(tilde(n.children[0], sentences));
    case K::And:
    case K::Or: {
        std::vector<Formula> parts;
        for (const auto& c : n.children) parts.push_back(tilde(c, sentences));
        return n.kind == K::And ? Formula::conjunction(parts) : Formula::disjunction(parts);
    }
    }
    return Formula::falsity();
}

// Disjunctive normal form over literals "atom(side)", atoms stored in the variable x.
constexpr std::size_t kMaxTerms = 4096;

struct Literal {
    int side = 0;  // 0: x, 1: y
    int atom = 0;
    bool negated = false;
    auto operator<=>(const Literal&) const = default;
};
using Term = std::vector<Literal>;  // sorted, no duplicates
using Dnf = std::set<Term>;

class DnfBuilder {
public:
    explicit DnfBuilder(std::vector<BasicLocalSentence> sentences) : sentences_(std::move(sentences)) {}

    Dnf build(const GaifmanNode& n) {
        switch (n.kind) {
        case K::Sentence: {
            // Markers are all-or-nothing, so T(x) & T(y) reads the same and keeps the form symmetric.
            const Formula marker = Formula::predicate(marker_name(sentence_index(sentences_, n.sentence)), "x");
            const Dnf left = literal(0, marker, "x");
            return conjoin(left, literal(1, rename_free(marker, "x", "y"), "y"));
        }
        case K::UnaryLocal: return literal(n.variable == "x" ? 0 : 1, n.formula, n.variable);
        case K::Near: return {};
        case K::Product: {
            Dnf out;
            for (const auto& [zx, zy] : n.products) {
                const Dnf left = literal(0, zx, "x");
                add_all(out, conjoin(left, literal(1, zy, "y")));
            }
            return out;
        }
        case K::Not: return negate(build(n.children[0]));
        case K::And: {
            Dnf out{Term{}};
            for (const auto& c : n.children) out = conjoin(out, build(c));
            return out;
        }
        case K::Or: {
            Dnf out;
            for (const auto& c : n.children) add_all(out, build(c));
            return out;
        }
        }
        return {};
    }

    const std::vector<Formula>& atoms() const { return atoms_; }

private:
    Dnf literal(int side, Formula f, const std::string& var) {
        f = fold_constants(f);
        bool negated = false;
        while (f.kind() == FormulaKind::Not) {
            negated = !negated;
            f = f.lhs();
        }
        if (f.kind() == FormulaKind::True || f.kind() == FormulaKind::False) {
            const bool value = (f.kind() == FormulaKind::True) != negated;
            return value ? Dnf{Term{}} : Dnf{};
        }
        if (var != "x") f = rename_free(f, var, "x");
        auto it = std::find(atoms_.begin(), atoms_.end(), f);
        const int id = static_cast<int>(it - atoms_.begin());
        if (it == atoms_.end()) atoms_.push_back(f);
        return Dnf{Term{Literal{side, id, negated}}};
    }

    static void add_all(Dnf& into, const Dnf& from) {
        into.insert(from.begin(), from.end());
        check(into);
    }

    static void check(const Dnf& d) {
        if (d.size() > kMaxTerms)
            throw SizeLimitExceeded("far-regime disjunctive form", static_cast<int>(d.size()),
                                    static_cast<int>(kMaxTerms), "terms");
    }

    static Dnf conjoin(const Dnf& a, const Dnf& b) {
        Dnf out;
        for (const auto& s : a)
            for (const auto& t : b) {
                Term merged;
                std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(merged));
                bool contradictory = false;
                for (std::size_t i = 0; i + 1 < merged.size(); ++i)
                    if (merged[i].side == merged[i + 1].side && merged[i].atom == merged[i + 1].atom) contradictory = true;
                if (!contradictory) out.insert(std::move(merged));
                check(out);
            }
        return out;
    }

    static Dnf negate(const Dnf& d) {
        Dnf out{Term{}};
        for (const auto& term : d) {
            Dnf clause;
            for (auto lit : term) {
                lit.negated = !lit.negated;
                clause.insert(Term{lit});
            }
            out = conjoin(out, clause);
        }
        return out;
    }

    std::vector<BasicLocalSentence> sentences_;
    std::vector<Formula> atoms_;
};

bool is_boolean(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: return true;
    default: return false;
    }
}

void collect_atoms(const Formula& f, std::vector<Formula>& atoms) {
    if (!is_boolean(f)) {
        if (std::find(atoms.begin(), atoms.end(), f) == atoms.end()) atoms.push_back(f);
        return;
    }
    if (f.kind() == FormulaKind::True || f.kind() == FormulaKind::False) return;
    collect_atoms(f.lhs(), atoms);
    if (f.kind() != FormulaKind::Not) collect_atoms(f.rhs(), atoms);
}

// Bit i of `mask` set: atom i is false.
bool evaluate_cell(const Formula& f, const std::vector<Formula>& atoms, std::uint64_t mask) {
    switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Not: return !evaluate_cell(f.lhs(), atoms, mask);
    case FormulaKind::And: return evaluate_cell(f.lhs(), atoms, mask) && evaluate_cell(f.rhs(), atoms, mask);
    case FormulaKind::Or: return evaluate_cell(f.lhs(), atoms, mask) || evaluate_cell(f.rhs(), atoms, mask);
    case FormulaKind::Implies: return !evaluate_cell(f.lhs(), atoms, mask) || evaluate_cell(f.rhs(), atoms, mask);
    case FormulaKind::Iff: return evaluate_cell(f.lhs(), atoms, mask) == evaluate_cell(f.rhs(), atoms, mask);
    default: {
        const auto i = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), f) - atoms.begin());
        return ((mask >> i) & 1U) == 0;
    }
    }
}

// Canonical text of a node up to the order of commutative operands, used to test symmetry.
Formula orient(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Edge:
    case FormulaKind::Equals:
    case FormulaKind::DistLeq: {
        if (f.var(0) <= f.var(1)) return f;
        if (f.kind() == FormulaKind::Edge) return Formula::edge(f.var(1), f.var(0));
        if (f.kind() == FormulaKind::Equals) return Formula::equals(f.var(1), f.var(0));
        return Formula::dist_leq(f.var(1), f.var(0), f.radius());
    }
    case FormulaKind::Not: return Formula::negation(orient(f.lhs()));
    case FormulaKind::And: return Formula::conjunction(orient(f.lhs()), orient(f.rhs()));
    case FormulaKind::Or: return Formula::disjunction(orient(f.lhs()), orient(f.rhs()));
    case FormulaKind::Implies: return Formula::implication(orient(f.lhs()), orient(f.rhs()));
    case FormulaKind::Iff: return Formula::equivalence(orient(f.lhs()), orient(f.rhs()));
    case FormulaKind::Exists: return Formula::exists(f.name(), orient(f.lhs()));
    case FormulaKind::Forall: return Formula::forall(f.name(), orient(f.lhs()));
    default: return f;
    }
}

std::string canonical_text(const GaifmanNode& n) {
    switch (n.kind) {
    case K::Sentence:
        return "(sentence " + std::to_string(n.sentence.count) + " " + std::to_string(n.sentence.radius) + " " +
               n.sentence.chi.to_string() + ")";
    case K::UnaryLocal:
        return "(local " + n.variable + " " + std::to_string(n.radius) + " " + orient(n.formula).to_string() + ")";
    case K::Near: return "(near " + std::to_string(n.radius) + " " + orient(n.formula).to_string() + ")";
    case K::Product: {
        std::set<std::string> pairs;
        for (const auto& [zx, zy] : n.products) pairs.insert(orient(zx).to_string() + " | " + orient(zy).to_string());
        std::string out = "(product";
        for (const auto& p : pairs) out += " (" + p + ")";
        return out + ")";
    }
    case K::Not: return "(not " + canonical_text(n.children[0]) + ")";
    case K::And:
    case K::Or: {
        std::multiset<std::string> parts;
        for (const auto& c : n.children) parts.insert(canonical_text(c));
        std::string out = n.kind == K::And ? "(and" : "(or";
        for (const auto& p : parts) out += " " + p;
        return out + ")";
    }
    }
    return {};
}

void check_leaf_radii(const GaifmanNode& n, int t) {
    if ((n.kind == K::UnaryLocal || n.kind == K::Near) && n.radius > t)
        throw InputError("leaf radius " + std::to_string(n.radius) + " exceeds the locality radius " + std::to_string(t));
    for (const auto& c : n.children) check_leaf_radii(c, t);
}

bool reserved(const std::string& name) {
    return name.rfind(kMarkerPrefix, 0) == 0 || name.rfind(kSubsetPrefix, 0) == 0;
}

void check_reserved(const Formula& f) {
    for (const auto& p : f.predicate_names())
        if (reserved(p)) throw InputError("predicate name '" + p + "' uses a reserved prefix");
}

void check_reserved(const GaifmanNode& n) {
    check_reserved(n.formula);
    check_reserved(n.sentence.chi);
    for (const auto& [zx, zy] : n.products) {
        check_reserved(zx);
        check_reserved(zy);
    }
    for (const auto& c : n.children) check_reserved(c);
}

}  // namespace

Formula eta_tilde(const GaifmanForm& gf) { return tilde(gf.root, gf.sentences()); }

FarDecomposition far_formula(const GaifmanForm& gf) {
    DnfBuilder builder(gf.sentences());
    const Dnf dnf = builder.build(gf.root);
    const auto& atoms = builder.atoms();

    FarDecomposition far;
    auto side_formula = [&](const Term& term, int side) {
        std::vector<Formula> parts;
        for (const auto& lit : term) {
            if (lit.side != side) continue;
            const Formula& a = atoms[static_cast<std::size_t>(lit.atom)];
            parts.push_back(lit.negated ? Formula::negation(a) : a);
        }
        return Formula::conjunction(parts);
    };
    auto index_of = [&](const Formula& z) {
        auto it = std::find(far.zetas.begin(), far.zetas.end(), z);
        if (it != far.zetas.end()) return static_cast<int>(it - far.zetas.begin());
        far.zetas.push_back(z);
        return static_cast<int>(far.zetas.size() - 1);
    };
    std::set<std::pair<int, int>> pairs;
    for (const auto& term : dnf) {
        const int i = index_of(side_formula(term, 0));
        const int j = index_of(side_formula(term, 1));
        pairs.emplace(i, j);
    }
    far.pairs.assign(pairs.begin(), pairs.end());
    return far;
}

Formula build_psi(const GaifmanForm& gf) {
    return Formula::conjunction(Formula::negation(Formula::equivalence(eta_tilde(gf), far_formula(gf).formula())),
                                Formula::dist_leq("x", "y", 2 * gf.radius));
}

FarDecomposition refine_to_cells(const FarDecomposition& far, int max_atoms) {
    std::vector<Formula> atoms;
    for (const auto& z : far.zetas) collect_atoms(z, atoms);
    if (static_cast<int>(atoms.size()) > max_atoms)
        throw SizeLimitExceeded("cell refinement", static_cast<int>(atoms.size()), max_atoms, "atoms");

    const std::uint64_t cells = std::uint64_t{1} << atoms.size();
    std::vector<std::vector<std::uint64_t>> members(far.zetas.size());
    for (std::size_t z = 0; z < far.zetas.size(); ++z)
        for (std::uint64_t c = 0; c < cells; ++c)
            if (evaluate_cell(far.zetas[z], atoms, c)) members[z].push_back(c);

    std::set<std::pair<std::uint64_t, std::uint64_t>> cell_pairs;
    for (const auto& [a, b] : far.pairs)
        for (auto c : members[static_cast<std::size_t>(a)])
            for (auto d : members[static_cast<std::size_t>(b)]) cell_pairs.emplace(c, d);

    std::set<std::uint64_t> used;
    for (const auto& [c, d] : cell_pairs) {
        used.insert(c);
        used.insert(d);
    }
    std::map<std::uint64_t, int> index;
    FarDecomposition out;
    for (auto c : used) {
        std::vector<Formula> literals;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            literals.push_back(((c >> i) & 1U) ? Formula::negation(atoms[i]) : atoms[i]);
        index[c] = static_cast<int>(out.zetas.size());
        out.zetas.push_back(Formula::conjunction(literals));
    }
    for (const auto& [c, d] : cell_pairs) out.pairs.emplace_back(index[c], index[d]);
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

PerturbationPlan build_Tq(const std::vector<std::pair<int, int>>& pairs, const std::vector<Formula>& zetas) {
    const std::set<std::pair<int, int>> set(pairs.begin(), pairs.end());
    for (const auto& [i, j] : set) {
        if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= zetas.size() || static_cast<std::size_t>(j) >= zetas.size())
            throw InputError("pair index out of range");
        if (!set.count({j, i})) throw InputError("index set is not symmetric");
    }

    PerturbationPlan plan;
    if (set.empty()) return plan;

    std::set<int> referenced;
    for (const auto& [i, j] : set) {
        referenced.insert(i);
        referenced.insert(j);
    }
    std::vector<std::string> names;
    for (int i : referenced) {
        names.push_back(subset_name(static_cast<std::size_t>(i)));
        plan.subsets.push_back({names.back(), zetas[static_cast<std::size_t>(i)]});
    }
    std::vector<std::string> toggles;
    for (const auto& [i, j] : set)
        if (i == j) toggles.push_back(subset_name(static_cast<std::size_t>(i)));
    for (const auto& [i, j] : set) {
        if (i >= j) continue;
        const std::string zi = subset_name(static_cast<std::size_t>(i));
        const std::string zj = subset_name(static_cast<std::size_t>(j));
        const std::string both = zi + "or" + std::to_string(j + 1);
        names.push_back(both);
        plan.unions.push_back({both, zi, zj});
        toggles.insert(toggles.end(), {both, zi, zj});
    }
    plan.transduction.steps.emplace_back(ExpandStep{names});
    for (const auto& name : toggles) plan.transduction.steps.emplace_back(ComplementStep{name});
    return plan;
}

Transduction NormalFormDecomposition::composed() const {
    Transduction t;
    if (has_copy_step) t.steps.emplace_back(CopyStep{copy_arity});
    return compose(compose(t, immersive), perturbation);
}

NormalFormDecomposition decompose(const GaifmanTransduction& t) {
    if (t.copies < 0) throw InputError("copy arity must be non-negative");
    check_leaf_radii(t.eta.root, t.eta.radius);
    for (const auto& name : t.signature)
        if (reserved(name)) throw InputError("signature name '" + name + "' uses a reserved prefix");
    check_reserved(t.domain);
    check_reserved(t.eta.root);

    NormalFormDecomposition d;
    d.has_copy_step = t.copies > 0;
    d.copy_arity = d.has_copy_step ? t.copies : 1;
    d.radius = t.eta.radius;
    d.signature = t.signature;

    const GaifmanForm swapped = t.eta.swapped();
    if (canonical_text(t.eta.root) == canonical_text(swapped.root))
        d.symmetric_form = t.eta;
    else
        d.symmetric_form = GaifmanForm{GaifmanNode::make_or({t.eta.root, swapped.root}), t.eta.radius};

    const auto sentences = d.symmetric_form.sentences();
    std::vector<std::string> expanded = t.signature;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        d.markers.emplace_back(marker_name(i), sentences[i].to_formula());
        expanded.push_back(marker_name(i));
    }
    d.psi = build_psi(d.symmetric_form);
    if (!expanded.empty()) d.immersive.steps.emplace_back(ExpandStep{expanded});
    d.immersive.steps.emplace_back(InterpretStep{Interpretation(t.domain, d.psi)});

    const FarDecomposition cells = refine_to_cells(far_formula(d.symmetric_form));
    PerturbationPlan plan = build_Tq(cells.pairs, cells.zetas);
    d.perturbation = std::move(plan.transduction);
    d.subsets = std::move(plan.subsets);
    d.unions = std::move(plan.unions);
    return d;
}

// ---------------------------------------------------------------------------------------------
// Verification

namespace {

VertexSubset satisfying(const ColoredGraph& g, const Formula& f, const std::string& var) {
    const Evaluator eval(g, f, {var});
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const Vertex args[] = {v};
        if (eval(args)) out.push_back(v);
    }
    return VertexSubset(std::move(out));
}

std::string single_variable(const Formula& f, const std::string& fallback) {
    const auto free = f.free_variables();
    return free.empty() ? fallback : *free.begin();
}

void check_budget(const std::string& what, std::size_t predicates, int n, std::uint64_t budget) {
    const auto bits = predicates * static_cast<std::size_t>(n);
    if (bits >= 63 || (std::uint64_t{1} << bits) > budget) throw BudgetExceeded(what, std::ldexp(1.0, static_cast<int>(bits)), budget);
}

struct LeafCheck {
    std::string label;
    Formula formula;
    int radius;
    std::vector<std::string> variables;
    bool strong;
};

void collect_leaf_checks(const GaifmanNode& n, int t, std::vector<LeafCheck>& out) {
    switch (n.kind) {
    case K::Sentence:
        out.push_back({"sentence chi " + n.sentence.chi.to_string(), n.sentence.chi, n.sentence.radius,
                       {single_variable(n.sentence.chi, "x")}, false});
        break;
    case K::UnaryLocal:
        out.push_back({"local leaf " + n.formula.to_string(), n.formula, n.radius, {n.variable}, false});
        break;
    case K::Near:
        out.push_back({"near leaf " + n.formula.to_string(), n.formula, 2 * n.radius, {"x", "y"}, true});
        break;
    case K::Product:
        for (const auto& [zx, zy] : n.products) {
            out.push_back({"product factor " + zx.to_string(), zx, t, {"x"}, false});
            out.push_back({"product factor " + zy.to_string(), zy, t, {"y"}, false});
        }
        break;
    default:
        for (const auto& c : n.children) collect_leaf_checks(c, t, out);
        break;
    }
}

std::string describe(const LocalityReport& r) {
    std::string out = "radius " + std::to_string(r.radius_tested);
    if (r.witness) {
        out += ", tuple (";
        for (std::size_t i = 0; i < r.witness->tuple.size(); ++i)
            out += (i ? "," : "") + std::to_string(r.witness->tuple[i]);
        out += "): " + r.witness->reason;
    }
    return out;
}

}  // namespace

VerificationReport verify_decomposition(const GaifmanTransduction& t, const NormalFormDecomposition& d,
                                        const std::vector<ColoredGraph>& corpus, const VerifyOptions& options) {
    VerificationReport report;
    auto fail = [&](std::string why) {
        report.passed = false;
        report.failure = std::move(why);
        return report;
    };

    std::vector<ColoredGraph> bases;
    for (const auto& g : corpus) bases.push_back(t.copies > 0 ? copy_operation(g, t.copies) : g);

    // Leaf declarations, on the corpus expanded by the signature.
    std::vector<ColoredGraph> expanded;
    for (const auto& b : bases) {
        check_budget("signature colorings", t.signature.size(), b.vertex_count(), options.budget);
        for_each_coloring(b, t.signature, [&](const ColoredGraph& c) { expanded.push_back(c); });
    }
    std::vector<LeafCheck> leaves;
    collect_leaf_checks(t.eta.root, t.eta.radius, leaves);
    for (const auto& leaf : leaves) {
        const LocalityReport r = leaf.strong ? is_strongly_r_local_on_corpus(leaf.formula, leaf.radius, expanded, leaf.variables)
                                             : is_r_local_on_corpus(leaf.formula, leaf.radius, expanded, leaf.variables);
        if (!r.holds) {
            if (r.witness) report.input = r.witness->graph;
            return fail("declared locality fails for " + leaf.label + " at " + describe(r));
        }
    }

    // Strong 2t-locality of the edge formula actually used by the immersive part.
    const Interpretation* interpretation = nullptr;
    std::vector<std::string> immersive_names;
    for (const auto& step : d.immersive.steps) {
        if (const auto* e = std::get_if<ExpandStep>(&step)) {
            if (interpretation) return fail("immersive part expands after interpreting");
            immersive_names.insert(immersive_names.end(), e->names.begin(), e->names.end());
        } else if (const auto* i = std::get_if<InterpretStep>(&step)) {
            if (interpretation) return fail("immersive part has more than one interpretation");
            interpretation = &i->interpretation;
        } else {
            return fail("immersive part may only expand and interpret");
        }
    }
    if (!interpretation) return fail("immersive part has no interpretation");
    for (const auto& step : d.perturbation.steps)
        if (!std::holds_alternative<ExpandStep>(step) && !std::holds_alternative<ComplementStep>(step))
            return fail("perturbation may only expand and complement");

    std::vector<ColoredGraph> marked;
    for (const auto& b : bases) {
        check_budget("signature and marker colorings", immersive_names.size(), b.vertex_count(), options.budget);
        for_each_coloring(b, immersive_names, [&](const ColoredGraph& c) { marked.push_back(c); });
    }
    report.locality_graphs = marked.size();
    {
        const LocalityReport r =
            is_strongly_r_local_on_corpus(interpretation->raw_edge(), 2 * d.radius, marked, std::vector<std::string>{"x", "y"});
        if (!r.holds) {
            if (r.witness) report.input = r.witness->graph;
            return fail("edge formula of the immersive part is not strongly " + std::to_string(2 * d.radius) +
                        "-local: " + describe(r));
        }
    }

    // Exact reproduction under the valuation rules.
    const Interpretation source(t.domain, t.eta.to_formula());
    std::map<std::string, Formula> subset_rules;
    for (const auto& s : d.subsets) subset_rules.emplace(s.name, s.zeta);
    std::map<std::string, std::pair<std::string, std::string>> union_rules;
    for (const auto& u : d.unions) union_rules.emplace(u.name, std::make_pair(u.left, u.right));
    std::map<std::string, Formula> marker_rules(d.markers.begin(), d.markers.end());

    for (const auto& base : bases) {
        bool ok = true;
        for_each_coloring(base, t.signature, [&](const ColoredGraph& g_plus) {
            if (!ok) return;
            ++report.colorings_checked;
            const Graph expected = source.apply(g_plus).graph();

            ColoredGraph g_star = g_plus;
            for (const auto& name : immersive_names) {
                if (auto m = marker_rules.find(name); m != marker_rules.end()) {
                    const bool holds = Evaluator(g_plus, m->second, {}).holds();
                    g_star = g_star.with_predicate(name, holds ? VertexSubset::all(g_plus.vertex_count()) : VertexSubset{});
                } else if (!g_plus.has_predicate(name)) {
                    ok = false;
                    report.failure = "no valuation rule for immersive predicate '" + name + "'";
                    report.input = g_plus;
                    return;
                }
            }
            std::vector<Vertex> kept;
            const ColoredGraph k_graph = interpretation->apply(g_star, kept);

            std::map<std::string, VertexSubset> values;
            std::vector<VertexSubset> choices;
            for (const auto& step : d.perturbation.steps) {
                const auto* e = std::get_if<ExpandStep>(&step);
                if (!e) continue;
                for (const auto& name : e->names) {
                    if (auto s = subset_rules.find(name); s != subset_rules.end()) {
                        const VertexSubset on_source = satisfying(g_star, s->second, "x");
                        std::vector<Vertex> local;
                        for (std::size_t i = 0; i < kept.size(); ++i)
                            if (on_source.contains(kept[i])) local.push_back(static_cast<Vertex>(i));
                        values[name] = VertexSubset(std::move(local));
                    } else if (auto u = union_rules.find(name); u != union_rules.end()) {
                        values[name] = set_union(values[u->second.first], values[u->second.second]);
                    } else {
                        ok = false;
                        report.failure = "no valuation rule for perturbation predicate '" + name + "'";
                        report.input = g_plus;
                        return;
                    }
                    choices.push_back(values[name]);
                }
            }
            Graph actual;
            try {
                actual = apply_with_coloring(d.perturbation, k_graph, choices).graph();
            } catch (const TransductionError& e) {
                ok = false;
                report.failure = std::string("perturbation failed: ") + e.what();
                report.input = g_plus;
                return;
            }
            if (actual != expected) {
                ok = false;
                report.failure = "decomposition output differs from the source output";
                report.input = g_plus;
                report.expected = expected;
                report.actual = actual;
            }
        });
        if (!ok) {
            report.passed = false;
            return report;
        }
    }

    if (options.blind_subsumption) {
        const SubsumptionResult s = subsumes_on_corpus(d.composed(), t.plain(), corpus, options.budget);
        if (!s.holds) {
            report.input = s.input;
            report.expected = s.missing;
            return fail("blind search finds a source output the decomposition cannot produce");
        }
    }
    return report;
}

}  // namespace fotrans
