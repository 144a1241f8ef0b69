#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "fotrans/corpus.hpp"
#include "fotrans/errors.hpp"
#include "fotrans/evaluator.hpp"
#include "fotrans/gaifman.hpp"
#include "fotrans/generators.hpp"
#include "fotrans/graph_ops.hpp"
#include "fotrans/monotone.hpp"
#include "fotrans/normal_form.hpp"
#include "fotrans/parser.hpp"
#include "fotrans/patterns.hpp"
#include "fotrans/transduction.hpp"
#include "fotrans/widths.hpp"

namespace fotrans::cli {

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// A graph on one line, records separated by "; ".
std::string inline_graph(const ColoredGraph& g) {
    std::string text = format_graph(g);
    std::string out;
    for (char c : text) {
        if (c == '\n') {
            out += "; ";
        } else {
            out += c;
        }
    }
    while (!out.empty() && (out.back() == ' ' || out.back() == ';')) out.pop_back();
    return out;
}

std::string join(const std::vector<int>& values, const char* sep, int offset = 0) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(values[i] + offset);
    }
    return out;
}

std::string edge_list(const Graph& g) {
    std::string out;
    for (const Edge& e : g.edges()) {
        if (!out.empty()) out += ",";
        out += std::to_string(e.u) + "-" + std::to_string(e.v);
    }
    return out.empty() ? "-" : out;
}

std::vector<std::string> expand_names(const Transduction& t) {
    std::vector<std::string> names;
    for (const auto& step : t.steps)
        if (const auto* e = std::get_if<ExpandStep>(&step)) names.insert(names.end(), e->names.begin(), e->names.end());
    return names;
}

// "color <name> <v>..." lines; every other non-blank, non-comment line is an error.
std::map<std::string, VertexSubset> read_coloring(const std::string& path) {
    std::istringstream in(read_text(path));
    std::map<std::string, VertexSubset> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string tag, name;
        if (!(fields >> tag)) continue;
        if (tag != "color" || !(fields >> name))
            throw InputError("coloring file line " + std::to_string(number) + ": expected 'color <name> <vertices>'");
        std::vector<Vertex> members;
        std::string token;
        while (fields >> token) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(token, &used);
                if (used != token.size() || v < 0) throw std::invalid_argument(token);
                members.push_back(v);
            } catch (const std::logic_error&) {
                throw InputError("coloring file line " + std::to_string(number) + ": bad vertex '" + token + "'");
            }
        }
        out[name] = VertexSubset(std::move(members));
    }
    return out;
}

Assignment parse_assignment(const std::string& text) {
    Assignment out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("assignment item '" + item + "' is not var=vertex");
        try {
            out[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw InputError("assignment item '" + item + "' has no vertex number");
        }
    }
    return out;
}

struct Options {
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;
    std::string format = "table";

    std::string family;
    std::vector<std::string> params;

    std::string graph;
    std::string formula;
    std::string assignment;

    std::string transduction;
    std::string coloring;
    std::string source;
    std::string target;
    bool iso = false;

    std::string invariant;
    std::vector<std::string> graphs;

    std::string corpus_dir;
    int verify_all = -1;
    bool blind = false;

    std::string h;
    int max_colors = 8;
    std::string out_path;

    std::string kind;
    int cap = 5;
    int arity = 1;
    bool distinct = false;
    bool diagonal = false;
};

// Reports the outcome of a check that can fail; the witness line follows every FAIL.
int fail(std::ostream& out, const std::string& reason, const std::string& witness) {
    out << "FAIL " << reason << '\n' << "WITNESS: " << witness << '\n';
    return kFail;
}

int cmd_generate(const Options& o, std::ostream& out) {
    auto param = [&](std::size_t i) {
        if (i >= o.params.size()) throw InputError("family '" + o.family + "' needs " + std::to_string(i + 1) + " parameters");
        try {
            return std::stoi(o.params[i]);
        } catch (const std::logic_error&) {
            throw InputError("parameter '" + o.params[i] + "' is not an integer");
        }
    };
    const std::map<std::string, std::function<Graph()>> families = {
        {"path", [&] { return path(param(0)); }},
        {"cycle", [&] { return cycle(param(0)); }},
        {"grid", [&] { return grid(param(0), param(1)); }},
        {"complete", [&] { return complete(param(0)); }},
        {"star", [&] { return star(param(0)); }},
        {"binary-tree", [&] { return complete_binary_tree(param(0)); }},
        {"edgeless", [&] { return edgeless(param(0)); }},
        {"half-graph", [&] { return half_graph(param(0)); }},
        {"powerset", [&] { return powerset_bipartite(param(0)); }},
        {"random",
         [&] {
             if (o.params.size() < 2) throw InputError("family 'random' needs n and density");
             double density = 0;
             try {
                 density = std::stod(o.params[1]);
             } catch (const std::logic_error&) {
                 throw InputError("density '" + o.params[1] + "' is not a number");
             }
             if (density < 0 || density > 1) throw InputError("density must lie in [0, 1]");
             std::mt19937_64 rng(o.seed);
             return random_graph(param(0), density, rng);
         }},
    };
    auto it = families.find(o.family);
    if (it == families.end()) throw InputError("unknown family '" + o.family + "'");
    for (std::size_t i = 0; i < o.params.size() && o.family != "random"; ++i)
        if (param(i) < 0) throw InputError("parameters must be non-negative");
    out << format_graph(it->second());
    return kSuccess;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const ColoredGraph g = read_graph_file(o.graph);
    const Formula f = parse_formula(o.formula);
    Assignment assignment = parse_assignment(o.assignment);
    for (const auto& [var, v] : assignment)
        if (v < 0 || v >= g.vertex_count()) throw InputError("vertex " + std::to_string(v) + " of " + var + " is out of range");
    std::vector<std::string> open;
    for (const auto& v : sorted_free_variables(f))
        if (!assignment.count(v)) open.push_back(v);
    if (open.empty()) {
        out << (evaluate(g, f, assignment) ? "true" : "false") << '\n';
        return kSuccess;
    }
    // Remaining free variables: list the satisfying tuples in lexicographic order.
    std::vector<std::string> order = open;
    std::vector<Vertex> values(open.size(), 0);
    for (const auto& [var, v] : assignment) {
        order.push_back(var);
        values.push_back(v);
    }
    const Evaluator evaluator(g, f, order);
    for (std::size_t i = 0; i < open.size(); ++i) out << (i ? " " : "") << open[i];
    out << '\n';
    std::size_t count = 0;
    const std::size_t k = open.size();
    bool more = g.vertex_count() > 0;
    while (more) {
        if (evaluator(values)) {
            for (std::size_t i = 0; i < k; ++i) out << (i ? " " : "") << values[i];
            out << '\n';
            ++count;
        }
        more = false;
        for (std::size_t i = k; i-- > 0;) {
            if (++values[i] < g.vertex_count()) {
                more = true;
                break;
            }
            values[i] = 0;
        }
    }
    out << count << (count == 1 ? " tuple" : " tuples") << '\n';
    return kSuccess;
}

int cmd_apply(const Options& o, std::ostream& out) {
    const Transduction t = parse_transduction(read_text(o.transduction));
    const ColoredGraph g = read_graph_file(o.graph);
    const std::vector<std::string> names = expand_names(t);
    std::vector<VertexSubset> choices(names.size());
    if (!o.coloring.empty()) {
        auto given = read_coloring(o.coloring);
        for (std::size_t i = 0; i < names.size(); ++i) {
            auto it = given.find(names[i]);
            if (it == given.end()) continue;
            choices[i] = it->second;
            given.erase(it);
        }
        if (!given.empty()) throw InputError("coloring names '" + given.begin()->first + "', which no expand step introduces");
    }
    out << format_graph(apply_with_coloring(t, g, choices));
    return kSuccess;
}

int cmd_witness(const Options& o, std::ostream& out) {
    const Transduction t = parse_transduction(read_text(o.transduction));
    const ColoredGraph source = read_graph_file(o.source);
    const Graph target = read_graph_file(o.target).graph();
    const WitnessResult r = witness_search(t, source, target, o.budget, o.iso);
    if (!r.found)
        return fail(out, "no coloring produces the target (" + std::to_string(r.colorings_tried) + " colorings)",
                    "kind=no-coloring colorings=" + std::to_string(r.colorings_tried) + " target=" +
                        inline_graph(ColoredGraph(target)));
    out << "FOUND after " << r.colorings_tried << (r.colorings_tried == 1 ? " coloring" : " colorings") << '\n';
    const std::vector<std::string> names = expand_names(t);
    if (names.empty()) out << "empty coloring\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << "color " << names[i];
        for (Vertex v : r.choices[i]) out << ' ' << v;
        out << '\n';
    }
    return kSuccess;
}

int cmd_invariant(const Options& o, std::ostream& out) {
    std::vector<std::string> names;
    if (o.invariant == "all") {
        names = {"bandwidth", "pathwidth", "treewidth", "star-chromatic"};
    } else if (o.invariant == "bandwidth" || o.invariant == "pathwidth" || o.invariant == "treewidth" ||
               o.invariant == "star-chromatic") {
        names = {o.invariant};
    } else {
        throw InputError("unknown invariant '" + o.invariant + "'");
    }
    struct Row {
        std::string graph_id, invariant, value, witness;
    };
    std::vector<Row> rows;
    for (const auto& path : o.graphs) {
        const Graph g = read_graph_file(path).graph();
        for (const auto& name : names) {
            Row row{stem(path), name, "", ""};
            if (name == "bandwidth") {
                row.value = std::to_string(bandwidth(g));
            } else if (name == "pathwidth") {
                row.value = std::to_string(pathwidth(g));
            } else if (name == "treewidth") {
                row.value = std::to_string(treewidth(g));
            } else {
                const int k = star_chromatic_number(g);
                row.value = std::to_string(k);
                if (k > 0) row.witness = "colors=" + join(*star_coloring_within(g, k), ",", 1);
            }
            rows.push_back(row);
        }
    }
    if (o.format == "csv") {
        out << "graph_id,invariant,value,witness_blob\n";
        for (const auto& r : rows)
            out << csv_field(r.graph_id) << ',' << csv_field(r.invariant) << ',' << csv_field(r.value) << ','
                << csv_field(r.witness) << '\n';
        return kSuccess;
    }
    if (rows.size() == 1) {
        out << rows[0].value << '\n';
        return kSuccess;
    }
    std::size_t w_graph = 5, w_name = 9, w_value = 5;
    for (const auto& r : rows) {
        w_graph = std::max(w_graph, r.graph_id.size());
        w_name = std::max(w_name, r.invariant.size());
        w_value = std::max(w_value, r.value.size());
    }
    auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
        std::ostringstream s;
        s << std::left << std::setw(static_cast<int>(w_graph)) << a << "  " << std::setw(static_cast<int>(w_name)) << b
          << "  " << std::setw(static_cast<int>(w_value)) << c << "  " << d;
        std::string text = s.str();
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out << text << '\n';
    };
    line("graph", "invariant", "value", "witness");
    for (const auto& r : rows) line(r.graph_id, r.invariant, r.value, r.witness);
    return kSuccess;
}

int cmd_normal_form(const Options& o, std::ostream& out) {
    const GaifmanTransduction t = parse_gaifman_transduction(read_text(o.transduction));
    const NormalFormDecomposition d = decompose(t);
    out << "radius " << d.radius << '\n';
    if (d.has_copy_step) out << "copies " << d.copy_arity << '\n';
    out << "psi " << d.psi.to_string() << '\n';
    for (const auto& [name, sentence] : d.markers) out << "marker " << name << " = " << sentence.to_string() << '\n';
    for (const auto& s : d.subsets) out << "subset " << s.name << " = " << s.zeta.to_string() << '\n';
    for (const auto& u : d.unions) out << "union " << u.name << " = " << u.left << " | " << u.right << '\n';
    out << "immersive:\n" << format_transduction(d.immersive);
    out << "perturbation:\n" << format_transduction(d.perturbation);

    std::vector<ColoredGraph> corpus;
    if (!o.corpus_dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(o.corpus_dir))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) corpus.push_back(read_graph_file(f.string()));
        if (corpus.empty()) throw InputError("corpus directory " + o.corpus_dir + " holds no graph files");
    } else if (o.verify_all >= 0) {
        if (o.verify_all > 6) throw SizeLimitExceeded("--verify-all corpus", o.verify_all, 6);
        for (const auto& g : all_labeled_graphs_up_to(o.verify_all)) corpus.emplace_back(g);
    } else {
        return kSuccess;
    }
    VerifyOptions options;
    options.budget = o.budget;
    options.blind_subsumption = o.blind;
    const VerificationReport r = verify_decomposition(t, d, corpus, options);
    if (!r.passed) {
        std::string witness = "check=\"" + r.failure + "\"";
        if (r.input) witness += " input=\"" + inline_graph(*r.input) + "\"";
        if (r.expected) witness += " expected=" + edge_list(*r.expected);
        if (r.actual) witness += " actual=" + edge_list(*r.actual);
        return fail(out, r.failure, witness);
    }
    out << "PASS " << corpus.size() << " graphs, " << r.colorings_checked << " colorings, " << r.locality_graphs
        << " locality graphs\n";
    return kSuccess;
}

int cmd_verify_monotone(const Options& o, std::ostream& out) {
    const Graph g = read_graph_file(o.graph).graph();
    const Subgraph h = subgraph_from(read_graph_file(o.h));
    MonotoneReport r;
    if (!o.coloring.empty()) {
        std::vector<int> colors;
        std::istringstream in(o.coloring);
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                colors.push_back(std::stoi(item) - 1);
            } catch (const std::logic_error&) {
                throw InputError("coloring entry '" + item + "' is not a color number");
            }
        }
        r = verify_monotone_with(g, h, StarColoring{colors});
    } else {
        r = verify_monotone(g, h, o.max_colors);
    }
    if (!o.out_path.empty()) {
        std::ofstream file(o.out_path);
        if (!file) throw InputError("cannot write " + o.out_path);
        write_graph(file, r.expansion.base);
    }
    out << r.trace();
    if (!r.passed) {
        std::string witness = "coloring=" + join(r.coloring.colors, ",", 1);
        if (r.mismatch) {
            const auto& vs = h.vertices.members();
            witness += " edge=" + std::to_string(vs[static_cast<std::size_t>(r.mismatch->u)]) + "-" +
                       std::to_string(vs[static_cast<std::size_t>(r.mismatch->v)]) +
                       (r.output.adjacent(r.mismatch->u, r.mismatch->v) ? " kind=spurious" : " kind=missing");
        }
        return fail(out, r.failure, witness);
    }
    out << "PASS\n";
    return kSuccess;
}

int cmd_pattern(const Options& o, std::ostream& out) {
    const ColoredGraph g = read_graph_file(o.graph);
    const Formula phi = parse_formula(o.formula);
    PatternOptions options;
    options.distinct = o.distinct;
    options.check_diagonal = o.diagonal;
    options.budget = o.budget;
    std::optional<PatternWitness> w;
    if (o.kind == "half-graph") {
        const HalfGraphResult r = half_graph_pattern_max(g, phi, o.cap, options);
        out << "half-graph " << r.size << '\n';
        if (r.size > 0) out << format_witness(r.witness) << '\n';
        return kSuccess;
    }
    if (o.kind == "order") {
        w = order_property_n(g, phi, o.arity, o.cap, options);
    } else if (o.kind == "independence") {
        w = independence_property_n(g, phi, o.cap, options);
    } else {
        throw InputError("unknown pattern kind '" + o.kind + "'");
    }
    if (!w) {
        out << o.kind << " n=" << o.cap << " NOT FOUND\n";
        return kFail;
    }
    out << o.kind << " n=" << o.cap << " FOUND\n" << format_witness(*w) << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"First-order transductions of finite graphs", "fotrans"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "Seed for sampled experiments");
    app.add_option("--budget", o.budget, "Search budget")->check(CLI::PositiveNumber);

    auto* generate = app.add_subcommand("generate", "Print a graph of a generator family");
    generate->add_option("family", o.family, "path|cycle|grid|complete|star|binary-tree|edgeless|half-graph|powerset|random")
        ->required();
    generate->add_option("params", o.params, "Family parameters");

    auto* eval = app.add_subcommand("eval", "Evaluate a formula on a graph");
    eval->add_option("graph", o.graph)->required()->check(CLI::ExistingFile);
    eval->add_option("formula", o.formula)->required();
    eval->add_option("assignment", o.assignment, "var=vertex,...");

    auto* apply = app.add_subcommand("apply", "Run a transduction under one coloring");
    apply->add_option("transduction", o.transduction)->required()->check(CLI::ExistingFile);
    apply->add_option("graph", o.graph)->required()->check(CLI::ExistingFile);
    apply->add_option("coloring", o.coloring, "File of 'color <name> <vertices>' lines")->check(CLI::ExistingFile);

    auto* witness = app.add_subcommand("witness", "Search for a coloring producing the target");
    witness->add_option("transduction", o.transduction)->required()->check(CLI::ExistingFile);
    witness->add_option("source", o.source)->required()->check(CLI::ExistingFile);
    witness->add_option("target", o.target)->required()->check(CLI::ExistingFile);
    witness->add_flag("--iso", o.iso, "Match the target up to isomorphism");

    auto* invariant = app.add_subcommand("invariant", "Exact width parameters");
    invariant->add_option("name", o.invariant, "bandwidth|pathwidth|treewidth|star-chromatic|all")->required();
    invariant->add_option("graphs", o.graphs)->required()->check(CLI::ExistingFile);
    invariant->add_option("--format", o.format)->check(CLI::IsMember({"table", "csv"}));

    auto* normal_form = app.add_subcommand("normal-form", "Decompose a Gaifman-form transduction");
    normal_form->add_option("transduction", o.transduction)->required()->check(CLI::ExistingFile);
    auto* corpus_dir = normal_form->add_option("--verify-corpus", o.corpus_dir, "Directory of graph files")
                           ->check(CLI::ExistingDirectory);
    normal_form->add_option("--verify-all", o.verify_all, "Verify on all graphs up to this many vertices")
        ->check(CLI::NonNegativeNumber)
        ->excludes(corpus_dir);
    normal_form->add_flag("--blind", o.blind, "Also compare output sets");

    auto* monotone = app.add_subcommand("verify-monotone", "Carve a subgraph out by a fixed interpretation");
    monotone->add_option("graph", o.graph, "Host graph")->required()->check(CLI::ExistingFile);
    monotone->add_option("subgraph", o.h, "Subgraph file; predicate \"vertices\" gives its vertex set")->required()->check(CLI::ExistingFile);
    monotone->add_option("--max-colors", o.max_colors)->check(CLI::PositiveNumber);
    monotone->add_option("--coloring", o.coloring, "Proper coloring to use, 1-based, comma separated");
    monotone->add_option("--out", o.out_path, "Write the expansion here");

    auto* pattern = app.add_subcommand("pattern", "Half-graph, order and independence patterns");
    pattern->add_option("kind", o.kind, "half-graph|order|independence")->required();
    pattern->add_option("graph", o.graph)->required()->check(CLI::ExistingFile);
    pattern->add_option("formula", o.formula)->required();
    pattern->add_option("--cap", o.cap, "Largest size (half-graph) or the size n")->check(CLI::NonNegativeNumber);
    pattern->add_option("--arity", o.arity)->check(CLI::PositiveNumber);
    pattern->add_flag("--distinct", o.distinct, "Witness vertices pairwise distinct");
    pattern->add_flag("--diagonal", o.diagonal, "Order property: also require !phi(a,a)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(o, out);
        if (eval->parsed()) return cmd_eval(o, out);
        if (apply->parsed()) return cmd_apply(o, out);
        if (witness->parsed()) return cmd_witness(o, out);
        if (invariant->parsed()) return cmd_invariant(o, out);
        if (normal_form->parsed()) return cmd_normal_form(o, out);
        if (monotone->parsed()) return cmd_verify_monotone(o, out);
        if (pattern->parsed()) return cmd_pattern(o, out);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kLimit;
    } catch (const SizeLimitExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kLimit;
    } catch (const NotFoundError& e) {
        out << "NOT FOUND " << e.what() << '\n';
        return kFail;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace fotrans::cli
