#include "fotrans/transduction.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fotrans/errors.hpp"
#include "fotrans/evaluator.hpp"
#include "fotrans/graph_ops.hpp"
#include "fotrans/parser.hpp"

namespace fotrans {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Interpretation::Interpretation(Formula domain, Formula edge) : raw_edge_(std::move(edge)) {
    auto nu_free = domain.free_variables();
    if (nu_free.size() > 1) throw TransductionError("domain formula must have at most one free variable");
    if (nu_free.size() == 1 && *nu_free.begin() != "x") domain = rename_free(domain, *nu_free.begin(), "x");
    domain_ = std::move(domain);
    for (const std::string& v : raw_edge_.free_variables())
        if (v != "x" && v != "y") throw TransductionError("edge formula may only use free variables x and y, found '" + v + "'");
    edge_ = Formula::conjunction(Formula::disjunction(raw_edge_, swap_free(raw_edge_, "x", "y")),
                                 Formula::negation(Formula::equals("x", "y")));
}

Interpretation Interpretation::identity() { return Interpretation(Formula::truth(), Formula::edge("x", "y")); }

ColoredGraph Interpretation::apply(const ColoredGraph& g) const {
    std::vector<Vertex> kept;
    return apply(g, kept);
}

ColoredGraph Interpretation::apply(const ColoredGraph& g, std::vector<Vertex>& kept) const {
    kept.clear();
    Evaluator nu(g, domain_, {"x"});
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const Vertex arg[1] = {v};
        if (nu(arg)) kept.push_back(v);
    }
    Evaluator eta(g, edge_, {"x", "y"});
    std::vector<Edge> edges;
    const int m = static_cast<int>(kept.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const Vertex pair[2] = {kept[static_cast<std::size_t>(i)], kept[static_cast<std::size_t>(j)]};
            if (eta(pair)) edges.emplace_back(i, j);
        }
    std::map<std::string, VertexSubset> predicates;
    for (const auto& [name, members] : g.predicates()) {
        std::vector<Vertex> local;
        for (int i = 0; i < m; ++i)
            if (members.contains(kept[static_cast<std::size_t>(i)])) local.push_back(i);
        predicates.emplace(name, VertexSubset(std::move(local)));
    }
    return ColoredGraph(Graph(m, std::move(edges)), std::move(predicates));
}

bool Transduction::is_normalized() const {
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (std::holds_alternative<CopyStep>(steps[i]) && i != 0) return false;
    return true;
}

std::size_t Transduction::choice_count() const {
    std::size_t count = 0;
    for (const Step& s : steps)
        if (const auto* e = std::get_if<ExpandStep>(&s)) count += e->names.size();
    return count;
}

Graph subset_complement(const Graph& g, const VertexSubset& subset) {
    std::vector<char> m = g.matrix();
    const auto n = static_cast<std::size_t>(g.vertex_count());
    const auto& vs = subset.members();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const auto a = static_cast<std::size_t>(vs[i]), b = static_cast<std::size_t>(vs[j]);
            m[a * n + b] ^= 1;
            m[b * n + a] ^= 1;
        }
    return Graph::from_matrix(g.vertex_count(), m);
}

namespace {

// Applies one choice-free step.
ColoredGraph run_fixed_step(const Step& step, const ColoredGraph& g) {
    return std::visit(
        Overloaded{
            [&](const CopyStep& c) {
                if (c.copies < 1) throw TransductionError("copy arity must be at least 1");
                return copy_operation(g, c.copies);
            },
            [&](const InterpretStep& s) { return s.interpretation.apply(g); },
            [&](const ComplementStep& s) {
                if (!g.has_predicate(s.name)) throw TransductionError("complement of unknown predicate '" + s.name + "'");
                return g.with_graph(subset_complement(g.graph(), g.predicate(s.name)));
            },
            [&](const ExpandStep&) -> ColoredGraph { throw std::logic_error("expand step has choices"); },
        },
        step);
}

ColoredGraph expand(const ColoredGraph& g, const ExpandStep& e, const VertexSubset* subsets) {
    ColoredGraph out = g;
    for (std::size_t i = 0; i < e.names.size(); ++i) {
        for (Vertex v : subsets[i])
            if (v < 0 || v >= g.vertex_count())
                throw TransductionError("choice for '" + e.names[i] + "' names vertex " + std::to_string(v) +
                                        " outside the current stage");
        out = out.with_predicate(e.names[i], subsets[i]);
    }
    return out;
}

class Enumerator {
public:
    using Visit = std::function<bool(const std::vector<VertexSubset>&, const ColoredGraph&)>;
    Enumerator(const Transduction& t, const Visit& visit) : t_(t), visit_(visit) {}

    bool run(std::size_t index, const ColoredGraph& g) {
        if (index == t_.steps.size()) return visit_(choices_, g);
        const auto* e = std::get_if<ExpandStep>(&t_.steps[index]);
        if (!e) return run(index + 1, run_fixed_step(t_.steps[index], g));
        const int n = g.vertex_count();
        const std::size_t p = e->names.size();
        const std::uint64_t bits = p * static_cast<std::uint64_t>(n);
        const std::uint64_t end = std::uint64_t{1} << bits;
        const std::size_t base = choices_.size();
        choices_.resize(base + p);
        for (std::uint64_t mask = 0; mask < end; ++mask) {
            for (std::size_t q = 0; q < p; ++q) {
                std::vector<Vertex> members;
                for (int v = 0; v < n; ++v)
                    if ((mask >> (q * static_cast<std::size_t>(n) + static_cast<std::size_t>(v))) & 1U) members.push_back(v);
                choices_[base + q] = VertexSubset(std::move(members));
            }
            if (!run(index + 1, expand(g, *e, choices_.data() + base))) return false;
        }
        choices_.resize(base);
        return true;
    }

private:
    const Transduction& t_;
    const Visit& visit_;
    std::vector<VertexSubset> choices_;
};

}  // namespace

ColoredGraph apply_with_coloring(const Transduction& t, const ColoredGraph& g, const std::vector<VertexSubset>& choices) {
    if (choices.size() != t.choice_count())
        throw TransductionError("pipeline introduces " + std::to_string(t.choice_count()) + " predicates but " +
                                std::to_string(choices.size()) + " choices were given");
    ColoredGraph cur = g;
    std::size_t next = 0;
    for (const Step& s : t.steps) {
        if (const auto* e = std::get_if<ExpandStep>(&s)) {
            cur = expand(cur, *e, choices.data() + next);
            next += e->names.size();
        } else {
            cur = run_fixed_step(s, cur);
        }
    }
    return cur;
}

std::uint64_t coloring_space_bits(const Transduction& t, const ColoredGraph& g) {
    std::uint64_t n = static_cast<std::uint64_t>(g.vertex_count());
    std::uint64_t bits = 0;
    for (const Step& s : t.steps) {
        if (const auto* c = std::get_if<CopyStep>(&s)) n *= static_cast<std::uint64_t>(std::max(c->copies, 1));
        if (const auto* e = std::get_if<ExpandStep>(&s)) bits += e->names.size() * n;
    }
    return bits;
}

void for_each_output(const Transduction& t, const ColoredGraph& g, std::uint64_t budget,
                     const std::function<bool(const std::vector<VertexSubset>&, const ColoredGraph&)>& visit) {
    const std::uint64_t bits = coloring_space_bits(t, g);
    if (bits >= 63 || (std::uint64_t{1} << bits) > budget)
        throw BudgetExceeded("coloring enumeration", std::ldexp(1.0, static_cast<int>(std::min<std::uint64_t>(bits, 1023))), budget);
    Enumerator(t, visit).run(0, g);
}

std::set<Graph> output_set(const Transduction& t, const ColoredGraph& g, std::uint64_t budget) {
    std::set<Graph> out;
    for_each_output(t, g, budget, [&](const std::vector<VertexSubset>&, const ColoredGraph& h) {
        out.insert(h.graph());
        return true;
    });
    return out;
}

WitnessResult witness_search(const Transduction& t, const ColoredGraph& source, const Graph& target,
                             std::uint64_t budget, bool up_to_isomorphism) {
    if (up_to_isomorphism && target.vertex_count() > kIsomorphismVertexCap)
        throw SizeLimitExceeded("isomorphism matching", target.vertex_count(), kIsomorphismVertexCap);
    std::optional<Graph> target_key;
    if (up_to_isomorphism) target_key = canonical_form(target);

    WitnessResult result;
    for_each_output(t, source, budget, [&](const std::vector<VertexSubset>& choices, const ColoredGraph& h) {
        ++result.colorings_tried;
        const Graph& out = h.graph();
        bool match = false;
        if (!up_to_isomorphism) {
            match = out == target;
        } else if (out.vertex_count() == target.vertex_count() && out.edge_count() == target.edge_count()) {
            match = canonical_form(out) == *target_key;
        }
        if (match) {
            result.found = true;
            result.choices = choices;
        }
        return !match;
    });
    if (result.found) {
        // Replay the pipeline up to the first Expand step to recover the colored stage.
        ColoredGraph cur = source;
        for (const Step& s : t.steps) {
            if (const auto* e = std::get_if<ExpandStep>(&s)) {
                cur = expand(cur, *e, result.choices.data());
                break;
            }
            cur = run_fixed_step(s, cur);
        }
        result.coloring = t.choice_count() == 0 ? source : cur;
    }
    return result;
}

Transduction compose(const Transduction& first, const Transduction& second) {
    Transduction out = first;
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    return out;
}

SubsumptionResult subsumes_on_corpus(const Transduction& wide, const Transduction& narrow,
                                     const std::vector<ColoredGraph>& corpus, std::uint64_t budget) {
    SubsumptionResult result;
    for (const ColoredGraph& g : corpus) {
        const std::set<Graph> reachable = output_set(wide, g, budget);
        for_each_output(narrow, g, budget, [&](const std::vector<VertexSubset>&, const ColoredGraph& h) {
            if (reachable.count(h.graph())) return true;
            result.holds = false;
            result.input = g;
            result.missing = h.graph();
            return false;
        });
        if (!result.holds) break;
    }
    return result;
}

Transduction perturbation(const std::vector<std::string>& names) {
    Transduction t;
    if (names.empty()) return t;
    t.steps.emplace_back(ExpandStep{names});
    for (const std::string& name : names) t.steps.emplace_back(ComplementStep{name});
    return t;
}

std::string Rational::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational distance_shrink_ratio(const Interpretation& interpretation, const ColoredGraph& g) {
    std::vector<Vertex> kept;
    ColoredGraph h = interpretation.apply(g, kept);
    if (h.vertex_count() == 0) throw TransductionError("distance ratio: interpretation output is empty");
    DistanceMatrix dg(g.graph()), dh(h.graph());
    std::optional<Rational> best;
    for (int i = 0; i < h.vertex_count(); ++i)
        for (int j = i + 1; j < h.vertex_count(); ++j) {
            const int a = dh.at(i, j);
            const int b = dg.at(kept[static_cast<std::size_t>(i)], kept[static_cast<std::size_t>(j)]);
            if (a == kUnreachable || b == kUnreachable) continue;
            // a/b < num/den  iff  a*den < num*b
            if (!best || static_cast<std::int64_t>(a) * best->den < best->num * b) best = Rational{a, b};
        }
    if (!best) throw TransductionError("distance ratio: no pair of kept vertices is connected in both graphs");
    const std::int64_t d = std::gcd(best->num, best->den);
    return Rational{best->num / d, best->den / d};
}

namespace {

// Splits a line into words and double-quoted strings.
std::vector<std::string> tokenize_line(const std::string& line, int line_number) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        if (line[i] == '"') {
            const std::size_t close = line.find('"', i + 1);
            if (close == std::string::npos)
                throw InputError("line " + std::to_string(line_number) + ": unterminated string");
            out.push_back(line.substr(i + 1, close - i - 1));
            i = close + 1;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '"') ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

Formula parse_in_line(const std::string& text, const std::vector<std::string>& vars, int line_number) {
    try {
        return parse_formula(text, vars);
    } catch (const InputError& e) {
        throw InputError("line " + std::to_string(line_number) + ": " + e.what());
    }
}

int parse_count(const std::string& word, int line_number) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(word, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != word.size() || value < 1)
        throw InputError("line " + std::to_string(line_number) + ": expected a positive integer, got '" + word + "'");
    return value;
}

}  // namespace

Transduction read_transduction(std::istream& in) {
    Transduction t;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        auto words = tokenize_line(line, number);
        if (words.empty()) continue;
        const std::string where = "line " + std::to_string(number) + ": ";
        const std::string& head = words[0];
        if (head == "copy") {
            if (words.size() != 2) throw InputError(where + "usage: copy <k>");
            t.steps.emplace_back(CopyStep{parse_count(words[1], number)});
        } else if (head == "expand") {
            if (words.size() < 2) throw InputError(where + "usage: expand <name>...");
            t.steps.emplace_back(ExpandStep{{words.begin() + 1, words.end()}});
        } else if (head == "complement") {
            if (words.size() != 2) throw InputError(where + "usage: complement <name>");
            t.steps.emplace_back(ComplementStep{words[1]});
        } else if (head == "interpret") {
            if (words.size() != 5 || words[1] != "nu" || words[3] != "eta")
                throw InputError(where + "usage: interpret nu \"<formula>\" eta \"<formula>\"");
            Formula nu = parse_in_line(words[2], {"x"}, number);
            Formula eta = parse_in_line(words[4], {"x", "y"}, number);
            t.steps.emplace_back(InterpretStep{Interpretation(nu, eta)});
        } else {
            throw InputError(where + "unknown step '" + head + "'");
        }
    }
    return t;
}

Transduction parse_transduction(const std::string& text) {
    std::istringstream in(text);
    return read_transduction(in);
}

std::string format_transduction(const Transduction& t) {
    std::ostringstream out;
    for (const Step& s : t.steps) {
        std::visit(Overloaded{
                       [&](const CopyStep& c) { out << "copy " << c.copies << '\n'; },
                       [&](const ExpandStep& e) {
                           out << "expand";
                           for (const auto& n : e.names) out << ' ' << n;
                           out << '\n';
                       },
                       [&](const InterpretStep& s2) {
                           out << "interpret nu \"" << s2.interpretation.domain().to_string() << "\" eta \""
                               << s2.interpretation.raw_edge().to_string() << "\"\n";
                       },
                       [&](const ComplementStep& c) { out << "complement " << c.name << '\n'; },
                   },
                   s);
    }
    return out.str();
}

}  // namespace fotrans
