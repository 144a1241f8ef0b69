#include "fotrans/evaluator.hpp"

#include <array>

#include "fotrans/errors.hpp"

namespace fotrans {

Evaluator::Evaluator(const ColoredGraph& g, const Formula& f, std::vector<std::string> free_order)
    : graph_(&g.graph()), arity_(free_order.size()) {
    std::map<std::string, std::vector<int>> scope;
    for (std::size_t i = 0; i < free_order.size(); ++i) scope[free_order[i]].push_back(static_cast<int>(i));
    slots_ = static_cast<int>(free_order.size());

    std::map<std::string, int> predicate_index;
    for (const std::string& name : f.predicate_names()) {
        predicate_index[name] = static_cast<int>(predicates_.size());
        predicates_.push_back(g.predicate(name).indicator(g.vertex_count()));
    }
    root_ = compile(f, scope, predicate_index);
    if (f.uses_distance()) distances_ = DistanceMatrix(g.graph());
}

int Evaluator::compile(const Formula& f, std::map<std::string, std::vector<int>>& scope,
                       const std::map<std::string, int>& predicate_index) {
    auto slot = [&](const std::string& var) {
        auto it = scope.find(var);
        if (it == scope.end() || it->second.empty()) throw UnboundVariableError(var);
        return it->second.back();
    };
    Op op{f.kind()};
    switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
        break;
    case FormulaKind::Predicate:
        op.a = predicate_index.at(f.name());
        op.b = slot(f.var(0));
        break;
    case FormulaKind::Edge:
    case FormulaKind::Equals:
    case FormulaKind::DistLeq:
        op.a = slot(f.var(0));
        op.b = slot(f.var(1));
        op.radius = f.radius();
        break;
    case FormulaKind::Not:
        op.lhs = compile(f.lhs(), scope, predicate_index);
        break;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        // Every binder owns a fresh slot, so nested evaluation never needs to restore it.
        op.a = slots_++;
        scope[f.name()].push_back(op.a);
        op.lhs = compile(f.lhs(), scope, predicate_index);
        scope[f.name()].pop_back();
        break;
    }
    default:
        op.lhs = compile(f.lhs(), scope, predicate_index);
        op.rhs = compile(f.rhs(), scope, predicate_index);
        break;
    }
    ops_.push_back(op);
    return static_cast<int>(ops_.size()) - 1;
}

bool Evaluator::operator()(std::span<const Vertex> values) const {
    if (values.size() != arity_) throw InputError("evaluator: wrong number of values");
    const int n = graph_->vertex_count();
    for (Vertex v : values)
        if (v < 0 || v >= n) throw InputError("evaluator: vertex " + std::to_string(v) + " out of range");
    std::array<Vertex, 32> small{};
    std::vector<Vertex> large;
    Vertex* env = small.data();
    if (slots_ > static_cast<int>(small.size())) {
        large.resize(static_cast<std::size_t>(slots_));
        env = large.data();
    }
    for (std::size_t i = 0; i < values.size(); ++i) env[i] = values[i];
    return eval(root_, env);
}

bool Evaluator::eval(int index, Vertex* env) const {
    const Op& op = ops_[static_cast<std::size_t>(index)];
    switch (op.kind) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Edge: return graph_->adjacent(env[op.a], env[op.b]);
    case FormulaKind::Predicate: return predicates_[static_cast<std::size_t>(op.a)][static_cast<std::size_t>(env[op.b])] != 0;
    case FormulaKind::Equals: return env[op.a] == env[op.b];
    case FormulaKind::DistLeq: return distances_.at(env[op.a], env[op.b]) <= op.radius;
    case FormulaKind::Not: return !eval(op.lhs, env);
    case FormulaKind::And: return eval(op.lhs, env) && eval(op.rhs, env);
    case FormulaKind::Or: return eval(op.lhs, env) || eval(op.rhs, env);
    case FormulaKind::Implies: return !eval(op.lhs, env) || eval(op.rhs, env);
    case FormulaKind::Iff: return eval(op.lhs, env) == eval(op.rhs, env);
    case FormulaKind::Exists:
        for (Vertex v = 0; v < graph_->vertex_count(); ++v) {
            env[op.a] = v;
            if (eval(op.lhs, env)) return true;
        }
        return false;
    case FormulaKind::Forall:
        for (Vertex v = 0; v < graph_->vertex_count(); ++v) {
            env[op.a] = v;
            if (!eval(op.lhs, env)) return false;
        }
        return true;
    }
    return false;
}

bool evaluate(const ColoredGraph& g, const Formula& f, const Assignment& assignment) {
    std::vector<std::string> order;
    Tuple values;
    for (const auto& [var, v] : assignment) {
        order.push_back(var);
        values.push_back(v);
    }
    return Evaluator(g, f, std::move(order))(values);
}

std::vector<Tuple> solution_set(const ColoredGraph& g, const Formula& f, const std::vector<std::string>& vars) {
    Evaluator eval(g, f, vars);
    std::vector<Tuple> out;
    const int n = g.vertex_count();
    const std::size_t k = vars.size();
    if (k > 0 && n == 0) return out;
    Tuple t(k, 0);
    while (true) {
        if (eval(t)) out.push_back(t);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++t[i] < n) break;
            t[i] = 0;
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

std::vector<std::string> sorted_free_variables(const Formula& f) {
    auto free = f.free_variables();
    return {free.begin(), free.end()};
}

}  // namespace fotrans
