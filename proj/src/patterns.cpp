#include "fotrans/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "fotrans/errors.hpp"

namespace fotrans {

std::string to_string(PatternKind kind) {
    switch (kind) {
    case PatternKind::Order: return "order";
    case PatternKind::HalfGraph: return "half-graph";
    case PatternKind::Independence: return "independence";
    }
    return "";
}

std::pair<std::vector<std::string>, std::vector<std::string>> pattern_variables(int arity) {
    if (arity < 1) throw InputError("pattern arity must be positive");
    if (arity == 1) return {{"x"}, {"y"}};
    std::vector<std::string> xs, ys;
    for (int i = 1; i <= arity; ++i) {
        xs.push_back("x" + std::to_string(i));
        ys.push_back("y" + std::to_string(i));
    }
    return {xs, ys};
}

namespace {

// phi over all pairs of tuples, tuples indexed in lexicographic order.
class PairTable {
public:
    PairTable(const ColoredGraph& g, const Formula& phi, int arity) : n_(g.vertex_count()), arity_(arity) {
        auto [xs, ys] = pattern_variables(arity);
        std::vector<std::string> order = xs;
        order.insert(order.end(), ys.begin(), ys.end());
        const std::set<std::string> allowed(order.begin(), order.end());
        for (const auto& v : phi.free_variables())
            if (!allowed.count(v)) throw InputError("pattern formula uses unexpected free variable '" + v + "'");
        count_ = 1;
        for (int i = 0; i < arity; ++i) count_ *= static_cast<std::size_t>(n_);
        table_.assign(count_ * count_, 0);
        const Evaluator eval(g, phi, order);
        std::vector<Vertex> args(static_cast<std::size_t>(2 * arity));
        for (std::size_t a = 0; a < count_; ++a)
            for (std::size_t b = 0; b < count_; ++b) {
                const Tuple ta = tuple(a), tb = tuple(b);
                std::copy(ta.begin(), ta.end(), args.begin());
                std::copy(tb.begin(), tb.end(), args.begin() + arity);
                table_[a * count_ + b] = eval(args) ? 1 : 0;
            }
    }

    std::size_t count() const { return count_; }
    bool operator()(std::size_t a, std::size_t b) const { return table_[a * count_ + b] != 0; }

    Tuple tuple(std::size_t index) const {
        Tuple t(static_cast<std::size_t>(arity_));
        for (int i = arity_ - 1; i >= 0; --i) {
            t[static_cast<std::size_t>(i)] = static_cast<Vertex>(index % static_cast<std::size_t>(n_));
            index /= static_cast<std::size_t>(n_);
        }
        return t;
    }

private:
    int n_;
    int arity_;
    std::size_t count_ = 0;
    std::vector<char> table_;
};

void check_nominal(const char* what, int vertices, int exponent, std::uint64_t budget) {
    const double space = std::pow(static_cast<double>(vertices), exponent);
    if (space > static_cast<double>(budget)) throw BudgetExceeded(what, space, budget);
}

// Vertices in use, for the distinctness option.
class Used {
public:
    bool add(const Tuple& t) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (seen_.count(t[i])) {
                for (std::size_t j = 0; j < i; ++j) seen_.erase(t[j]);
                return false;
            }
            seen_.insert(t[i]);
        }
        return true;
    }
    void remove(const Tuple& t) {
        for (Vertex v : t) seen_.erase(v);
    }

private:
    std::set<Vertex> seen_;
};

bool distinct_within(const Tuple& t) { return std::set<Vertex>(t.begin(), t.end()).size() == t.size(); }

}  // namespace

HalfGraphResult half_graph_pattern_max(const ColoredGraph& g, const Formula& phi, int cap, const PatternOptions& options) {
    if (cap < 0) throw InputError("cap must be non-negative");
    const PairTable table(g, phi, 1);
    const std::size_t n = table.count();
    HalfGraphResult best;
    std::vector<std::size_t> as, bs;
    Used used;
    std::uint64_t nodes = 0;

    std::function<bool()> extend = [&]() -> bool {
        if (++nodes > options.budget) throw BudgetExceeded("half-graph search nodes", static_cast<double>(nodes), options.budget);
        const int depth = static_cast<int>(as.size());
        if (depth > best.size) {
            best.size = depth;
            best.witness = PatternWitness{PatternKind::HalfGraph, {}, {}};
            for (auto a : as) best.witness.a_tuples.push_back(table.tuple(a));
            for (auto b : bs) best.witness.b_tuples.push_back(table.tuple(b));
        }
        if (depth == cap) return true;
        for (std::size_t a = 0; a < n; ++a) {
            // phi(a, b_j) must fail for every earlier b_j.
            bool ok = true;
            for (auto b : bs)
                if (table(a, b)) ok = false;
            if (!ok) continue;
            if (options.distinct && !used.add(table.tuple(a))) continue;
            for (std::size_t b = 0; b < n; ++b) {
                bool fits = table(a, b);
                for (std::size_t i = 0; fits && i < as.size(); ++i) fits = table(as[i], b);
                if (!fits) continue;
                if (options.distinct && !used.add(table.tuple(b))) continue;
                as.push_back(a);
                bs.push_back(b);
                const bool done = extend();
                as.pop_back();
                bs.pop_back();
                if (options.distinct) used.remove(table.tuple(b));
                if (done) {
                    if (options.distinct) used.remove(table.tuple(a));
                    return true;
                }
            }
            if (options.distinct) used.remove(table.tuple(a));
        }
        return false;
    };
    extend();
    return best;
}

std::optional<PatternWitness> order_property_n(const ColoredGraph& g, const Formula& phi, int arity, int n,
                                               const PatternOptions& options) {
    if (n < 0) throw InputError("pattern length must be non-negative");
    check_nominal("order-property search space", g.vertex_count(), arity * n, options.budget);
    const PairTable table(g, phi, arity);
    std::vector<std::size_t> chosen;
    Used used;

    std::function<bool()> extend = [&]() -> bool {
        if (static_cast<int>(chosen.size()) == n) return true;
        for (std::size_t t = 0; t < table.count(); ++t) {
            if (options.check_diagonal && table(t, t)) continue;
            bool ok = true;
            for (auto c : chosen)
                if (!table(c, t) || table(t, c)) ok = false;
            if (!ok) continue;
            const Tuple tuple = table.tuple(t);
            if (options.distinct && (!distinct_within(tuple) || !used.add(tuple))) continue;
            chosen.push_back(t);
            if (extend()) return true;
            chosen.pop_back();
            if (options.distinct) used.remove(tuple);
        }
        return false;
    };
    if (n > 0 && table.count() == 0) return std::nullopt;
    if (!extend()) return std::nullopt;
    PatternWitness w{PatternKind::Order, {}, {}};
    for (auto c : chosen) w.a_tuples.push_back(table.tuple(c));
    return w;
}

std::optional<PatternWitness> independence_property_n(const ColoredGraph& g, const Formula& phi, int n,
                                                      const PatternOptions& options) {
    if (n < 0) throw InputError("pattern length must be non-negative");
    if (n > 20) throw SizeLimitExceeded("independence pattern", n, 20, "positions");
    check_nominal("independence-property search space", g.vertex_count(), n + 1, options.budget);
    const PairTable table(g, phi, 1);
    const std::size_t v_count = table.count();
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::size_t> as;
    std::vector<std::size_t> bs;
    Used used;

    auto cover = [&]() -> bool {
        bs.assign(subsets, v_count);
        std::size_t found = 0;
        for (std::size_t b = 0; b < v_count && found < subsets; ++b) {
            if (options.distinct && std::find(as.begin(), as.end(), b) != as.end()) continue;
            std::size_t mask = 0;
            for (std::size_t i = 0; i < as.size(); ++i)
                if (table(as[i], b)) mask |= std::size_t{1} << i;
            if (bs[mask] == v_count) {
                bs[mask] = b;
                ++found;
            }
        }
        return found == subsets;
    };

    std::function<bool()> extend = [&]() -> bool {
        if (static_cast<int>(as.size()) == n) return cover();
        for (std::size_t a = 0; a < v_count; ++a) {
            if (options.distinct && std::find(as.begin(), as.end(), a) != as.end()) continue;
            as.push_back(a);
            if (extend()) return true;
            as.pop_back();
        }
        return false;
    };
    if (!extend()) return std::nullopt;
    PatternWitness w{PatternKind::Independence, {}, {}};
    for (auto a : as) w.a_tuples.push_back(table.tuple(a));
    for (auto b : bs) w.b_tuples.push_back(table.tuple(b));
    return w;
}

bool verify_pattern(const ColoredGraph& g, const Formula& phi, const PatternWitness& w, const PatternOptions& options) {
    const int arity = w.a_tuples.empty() ? 1 : static_cast<int>(w.a_tuples.front().size());
    auto [xs, ys] = pattern_variables(arity);
    auto holds = [&](const Tuple& a, const Tuple& b) {
        Assignment assignment;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            assignment[xs[i]] = a[i];
            assignment[ys[i]] = b[i];
        }
        return evaluate(g, phi, assignment);
    };
    auto in_range = [&](const std::vector<Tuple>& ts) {
        for (const auto& t : ts) {
            if (static_cast<int>(t.size()) != arity) return false;
            for (Vertex v : t)
                if (v < 0 || v >= g.vertex_count()) return false;
        }
        return true;
    };
    if (!in_range(w.a_tuples) || !in_range(w.b_tuples)) return false;
    if (options.distinct) {
        std::set<Vertex> seen;
        std::size_t total = 0;
        for (const auto* list : {&w.a_tuples, &w.b_tuples})
            for (const auto& t : *list) {
                seen.insert(t.begin(), t.end());
                total += t.size();
            }
        if (seen.size() != total) return false;
    }
    const std::size_t n = w.a_tuples.size();
    switch (w.kind) {
    case PatternKind::Order:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j && !options.check_diagonal) continue;
                if (holds(w.a_tuples[i], w.a_tuples[j]) != (i < j)) return false;
            }
        return true;
    case PatternKind::HalfGraph:
        if (w.b_tuples.size() != n) return false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (holds(w.a_tuples[i], w.b_tuples[j]) != (i <= j)) return false;
        return true;
    case PatternKind::Independence:
        if (n >= 63 || w.b_tuples.size() != (std::size_t{1} << n)) return false;
        for (std::size_t mask = 0; mask < w.b_tuples.size(); ++mask)
            for (std::size_t i = 0; i < n; ++i)
                if (holds(w.a_tuples[i], w.b_tuples[mask]) != ((mask >> i & 1U) != 0)) return false;
        return true;
    }
    return false;
}

std::string format_witness(const PatternWitness& w) {
    auto list = [](const std::vector<Tuple>& ts) {
        std::string out;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i) out += ",";
            for (std::size_t j = 0; j < ts[i].size(); ++j) out += (j ? ":" : "") + std::to_string(ts[i][j]);
        }
        return out;
    };
    std::string out = "a=" + list(w.a_tuples);
    if (w.kind != PatternKind::Order) out += " b=" + list(w.b_tuples);
    return out;
}

}  // namespace fotrans
