#include "fotrans/formula.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "fotrans/errors.hpp"

namespace fotrans {

struct Formula::Node {
    FormulaKind kind = FormulaKind::True;
    std::string name;
    std::array<std::string, 2> vars;
    int radius = 0;
    std::array<std::shared_ptr<const Node>, 2> children;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula::Formula() : Formula(truth()) {}

Formula Formula::make(Node node) { return Formula(std::make_shared<const Node>(std::move(node))); }

Formula Formula::truth() {
    static const Formula value = make(Node{FormulaKind::True, {}, {}, 0, {}});
    return value;
}

Formula Formula::falsity() {
    static const Formula value = make(Node{FormulaKind::False, {}, {}, 0, {}});
    return value;
}

Formula Formula::edge(std::string x, std::string y) {
    return make(Node{FormulaKind::Edge, {}, {std::move(x), std::move(y)}, 0, {}});
}

Formula Formula::predicate(std::string name, std::string x) {
    return make(Node{FormulaKind::Predicate, std::move(name), {std::move(x), {}}, 0, {}});
}

Formula Formula::equals(std::string x, std::string y) {
    return make(Node{FormulaKind::Equals, {}, {std::move(x), std::move(y)}, 0, {}});
}

Formula Formula::dist_leq(std::string x, std::string y, int radius) {
    if (radius < 0) throw InputError("distance radius must be >= 0");
    return make(Node{FormulaKind::DistLeq, {}, {std::move(x), std::move(y)}, radius, {}});
}

Formula Formula::negation(Formula f) { return make(Node{FormulaKind::Not, {}, {}, 0, {f.node_, nullptr}}); }

Formula Formula::conjunction(Formula a, Formula b) {
    return make(Node{FormulaKind::And, {}, {}, 0, {a.node_, b.node_}});
}

Formula Formula::disjunction(Formula a, Formula b) {
    return make(Node{FormulaKind::Or, {}, {}, 0, {a.node_, b.node_}});
}

Formula Formula::implication(Formula a, Formula b) {
    return make(Node{FormulaKind::Implies, {}, {}, 0, {a.node_, b.node_}});
}

Formula Formula::equivalence(Formula a, Formula b) {
    return make(Node{FormulaKind::Iff, {}, {}, 0, {a.node_, b.node_}});
}

Formula Formula::exists(std::string var, Formula body) {
    return make(Node{FormulaKind::Exists, std::move(var), {}, 0, {body.node_, nullptr}});
}

Formula Formula::forall(std::string var, Formula body) {
    return make(Node{FormulaKind::Forall, std::move(var), {}, 0, {body.node_, nullptr}});
}

Formula Formula::conjunction(const std::vector<Formula>& parts) {
    if (parts.empty()) return truth();
    Formula out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out = conjunction(out, parts[i]);
    return out;
}

Formula Formula::disjunction(const std::vector<Formula>& parts) {
    if (parts.empty()) return falsity();
    Formula out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out = disjunction(out, parts[i]);
    return out;
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const {
    switch (kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Edge:
    case FormulaKind::Predicate:
    case FormulaKind::Equals:
    case FormulaKind::DistLeq:
        return true;
    default:
        return false;
    }
}

bool Formula::is_binary() const {
    auto k = kind();
    return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Implies || k == FormulaKind::Iff;
}

bool Formula::is_quantifier() const { return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall; }

const std::string& Formula::name() const { return node_->name; }
const std::string& Formula::var(int index) const { return node_->vars[static_cast<std::size_t>(index)]; }
int Formula::radius() const { return node_->radius; }
Formula Formula::lhs() const { return Formula(node_->children[0]); }
Formula Formula::rhs() const { return Formula(node_->children[1]); }

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    auto note = [&](const std::string& v) {
        if (!bound.count(v)) out.insert(v);
    };
    switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
        return;
    case FormulaKind::Predicate:
        note(f.var(0));
        return;
    case FormulaKind::Edge:
    case FormulaKind::Equals:
    case FormulaKind::DistLeq:
        note(f.var(0));
        note(f.var(1));
        return;
    case FormulaKind::Not:
        collect_free(f.lhs(), bound, out);
        return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        bool fresh = bound.insert(f.name()).second;
        collect_free(f.lhs(), bound, out);
        if (fresh) bound.erase(f.name());
        return;
    }
    default:
        collect_free(f.lhs(), bound, out);
        collect_free(f.rhs(), bound, out);
    }
}

void visit_nodes(const Formula& f, const std::function<void(const Formula&)>& fn) {
    fn(f);
    if (f.is_atom()) return;
    visit_nodes(f.lhs(), fn);
    if (f.is_binary()) visit_nodes(f.rhs(), fn);
}

}  // namespace

std::set<std::string> Formula::free_variables() const {
    std::set<std::string> bound, out;
    collect_free(*this, bound, out);
    return out;
}

std::set<std::string> Formula::predicate_names() const {
    std::set<std::string> out;
    visit_nodes(*this, [&](const Formula& g) {
        if (g.kind() == FormulaKind::Predicate) out.insert(g.name());
    });
    return out;
}

bool Formula::uses_distance() const {
    bool found = false;
    visit_nodes(*this, [&](const Formula& g) { found = found || g.kind() == FormulaKind::DistLeq; });
    return found;
}

namespace {

int precedence(FormulaKind k) {
    switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not: return 5;
    case FormulaKind::Exists:
    case FormulaKind::Forall: return 0;
    default: return 6;
    }
}

const char* symbol(FormulaKind k) {
    switch (k) {
    case FormulaKind::Iff: return " <-> ";
    case FormulaKind::Implies: return " -> ";
    case FormulaKind::Or: return " | ";
    default: return " & ";
    }
}

std::string print(const Formula& f);

std::string print_operand(const Formula& f, int min_precedence) {
    // A quantifier scopes maximally right, so as an operand it always needs parentheses.
    if (f.is_quantifier() || precedence(f.kind()) < min_precedence) return "(" + print(f) + ")";
    return print(f);
}

std::string print(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Edge: return "E(" + f.var(0) + "," + f.var(1) + ")";
    case FormulaKind::Predicate: return f.name() + "(" + f.var(0) + ")";
    case FormulaKind::Equals: return f.var(0) + "=" + f.var(1);
    case FormulaKind::DistLeq:
        return "dist(" + f.var(0) + "," + f.var(1) + ")<=" + std::to_string(f.radius());
    case FormulaKind::Not: {
        Formula c = f.lhs();
        bool bare = c.kind() == FormulaKind::Edge || c.kind() == FormulaKind::Predicate ||
                    c.kind() == FormulaKind::True || c.kind() == FormulaKind::False || c.kind() == FormulaKind::Not;
        return bare ? "!" + print(c) : "!(" + print(c) + ")";
    }
    case FormulaKind::Exists: return "ex " + f.name() + ". " + print(f.lhs());
    case FormulaKind::Forall: return "all " + f.name() + ". " + print(f.lhs());
    default: break;
    }
    const int p = precedence(f.kind());
    const bool right_assoc = f.kind() == FormulaKind::Implies;
    return print_operand(f.lhs(), right_assoc ? p + 1 : p) + symbol(f.kind()) +
           print_operand(f.rhs(), right_assoc ? p : p + 1);
}

}  // namespace

std::string Formula::to_string() const { return print(*this); }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind() || name() != other.name() || node_->vars != other.node_->vars ||
        radius() != other.radius())
        return false;
    if (is_atom()) return true;
    if (!(lhs() == other.lhs())) return false;
    return !is_binary() || rhs() == other.rhs();
}

int quantifier_rank(const Formula& f) {
    if (f.is_atom()) return 0;
    if (f.is_quantifier()) return 1 + quantifier_rank(f.lhs());
    if (f.kind() == FormulaKind::Not) return quantifier_rank(f.lhs());
    return std::max(quantifier_rank(f.lhs()), quantifier_rank(f.rhs()));
}

int expanded_quantifier_rank(const Formula& f) {
    if (f.kind() == FormulaKind::DistLeq) {
        int rank = 0;
        while ((1LL << rank) < static_cast<long long>(f.radius()) + 1) ++rank;
        return rank;
    }
    if (f.is_atom()) return 0;
    if (f.is_quantifier()) return 1 + expanded_quantifier_rank(f.lhs());
    if (f.kind() == FormulaKind::Not) return expanded_quantifier_rank(f.lhs());
    return std::max(expanded_quantifier_rank(f.lhs()), expanded_quantifier_rank(f.rhs()));
}

namespace {

void collect_all_variables(const Formula& f, std::set<std::string>& out) {
    visit_nodes(f, [&](const Formula& g) {
        if (g.is_quantifier()) out.insert(g.name());
        if (g.kind() == FormulaKind::Predicate) out.insert(g.var(0));
        if (g.kind() == FormulaKind::Edge || g.kind() == FormulaKind::Equals || g.kind() == FormulaKind::DistLeq) {
            out.insert(g.var(0));
            out.insert(g.var(1));
        }
    });
}

std::string fresh_variable(const std::string& base, const std::set<std::string>& taken) {
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken.count(candidate)) return candidate;
    }
}

Formula rebuild_binary(FormulaKind k, Formula a, Formula b) {
    switch (k) {
    case FormulaKind::And: return Formula::conjunction(std::move(a), std::move(b));
    case FormulaKind::Or: return Formula::disjunction(std::move(a), std::move(b));
    case FormulaKind::Implies: return Formula::implication(std::move(a), std::move(b));
    default: return Formula::equivalence(std::move(a), std::move(b));
    }
}

Formula rebuild_quantifier(FormulaKind k, std::string var, Formula body) {
    return k == FormulaKind::Exists ? Formula::exists(std::move(var), std::move(body))
                                    : Formula::forall(std::move(var), std::move(body));
}

}  // namespace

Formula swap_free(const Formula& f, const std::string& a, const std::string& b) {
    // A name no parsed formula can contain: the lexer rejects '#'.
    const std::string tmp = "#swap";
    return rename_free(rename_free(rename_free(f, a, tmp), b, a), tmp, b);
}

Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
    if (from == to) return f;
    auto swap_var = [&](const std::string& v) { return v == from ? to : v; };
    switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
        return f;
    case FormulaKind::Edge: return Formula::edge(swap_var(f.var(0)), swap_var(f.var(1)));
    case FormulaKind::Predicate: return Formula::predicate(f.name(), swap_var(f.var(0)));
    case FormulaKind::Equals: return Formula::equals(swap_var(f.var(0)), swap_var(f.var(1)));
    case FormulaKind::DistLeq: return Formula::dist_leq(swap_var(f.var(0)), swap_var(f.var(1)), f.radius());
    case FormulaKind::Not: return Formula::negation(rename_free(f.lhs(), from, to));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        if (f.name() == from) return f;
        Formula body = f.lhs();
        if (f.name() == to && body.free_variables().count(from)) {
            std::set<std::string> taken;
            collect_all_variables(body, taken);
            taken.insert(to);
            taken.insert(from);
            std::string renamed = fresh_variable(to, taken);
            body = rename_free(body, to, renamed);
            return rebuild_quantifier(f.kind(), renamed, rename_free(body, from, to));
        }
        return rebuild_quantifier(f.kind(), f.name(), rename_free(body, from, to));
    }
    default:
        return rebuild_binary(f.kind(), rename_free(f.lhs(), from, to), rename_free(f.rhs(), from, to));
    }
}

Formula substitute_predicate(const Formula& f, const std::string& name, const Formula& replacement) {
    auto free = replacement.free_variables();
    if (free.size() > 1) throw InputError("predicate replacement must have at most one free variable");
    switch (f.kind()) {
    case FormulaKind::Predicate:
        if (f.name() != name) return f;
        return free.empty() ? replacement : rename_free(replacement, *free.begin(), f.var(0));
    case FormulaKind::Not: return Formula::negation(substitute_predicate(f.lhs(), name, replacement));
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        return rebuild_quantifier(f.kind(), f.name(), substitute_predicate(f.lhs(), name, replacement));
    default:
        if (f.is_atom()) return f;
        return rebuild_binary(f.kind(), substitute_predicate(f.lhs(), name, replacement),
                              substitute_predicate(f.rhs(), name, replacement));
    }
}

Formula fold_constants(const Formula& f) {
    const auto T = FormulaKind::True;
    const auto F = FormulaKind::False;
    switch (f.kind()) {
    case FormulaKind::Not: {
        Formula c = fold_constants(f.lhs());
        if (c.kind() == T) return Formula::falsity();
        if (c.kind() == F) return Formula::truth();
        if (c.kind() == FormulaKind::Not) return c.lhs();
        return Formula::negation(c);
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        return rebuild_quantifier(f.kind(), f.name(), fold_constants(f.lhs()));
    default:
        break;
    }
    if (f.is_atom()) return f;
    Formula a = fold_constants(f.lhs());
    Formula b = fold_constants(f.rhs());
    switch (f.kind()) {
    case FormulaKind::And:
        if (a.kind() == F || b.kind() == F) return Formula::falsity();
        if (a.kind() == T) return b;
        if (b.kind() == T) return a;
        return Formula::conjunction(a, b);
    case FormulaKind::Or:
        if (a.kind() == T || b.kind() == T) return Formula::truth();
        if (a.kind() == F) return b;
        if (b.kind() == F) return a;
        return Formula::disjunction(a, b);
    case FormulaKind::Implies:
        if (a.kind() == F || b.kind() == T) return Formula::truth();
        if (a.kind() == T) return b;
        if (b.kind() == F) return fold_constants(Formula::negation(a));
        return Formula::implication(a, b);
    default:  // Iff
        if (a.kind() == T) return b;
        if (b.kind() == T) return a;
        if (a.kind() == F) return fold_constants(Formula::negation(b));
        if (b.kind() == F) return fold_constants(Formula::negation(a));
        return Formula::equivalence(a, b);
    }
}

Formula zeta_formula(int radius, const Graph& pattern) {
    if (radius < 0) throw InputError("zeta_formula: radius must be >= 0");
    std::vector<Formula> parts;
    for (Vertex i = 0; i < pattern.vertex_count(); ++i)
        for (Vertex j = i + 1; j < pattern.vertex_count(); ++j) {
            Formula near = Formula::dist_leq("x" + std::to_string(i + 1), "x" + std::to_string(j + 1), radius);
            parts.push_back(pattern.adjacent(i, j) ? near : Formula::negation(near));
        }
    return Formula::conjunction(parts);
}

}  // namespace fotrans
