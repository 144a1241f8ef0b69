#include "fotrans/gaifman.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fotrans/errors.hpp"
#include "fotrans/parser.hpp"

namespace fotrans {

Formula BasicLocalSentence::to_formula() const {
    if (count < 1) throw InputError("basic-local sentence needs at least one point");
    const auto chi_free = chi.free_variables();
    if (chi_free.size() > 1) throw InputError("basic-local sentence: chi must have at most one free variable");
    std::vector<std::string> vars;
    for (int i = 1; i <= count; ++i) vars.push_back("x" + std::to_string(i));
    std::vector<Formula> parts;
    for (const auto& v : vars) parts.push_back(chi_free.empty() ? chi : rename_free(chi, *chi_free.begin(), v));
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            parts.push_back(Formula::negation(Formula::dist_leq(vars[i], vars[j], 2 * radius)));
    Formula body = Formula::conjunction(parts);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::exists(*it, body);
    return body;
}

GaifmanNode GaifmanNode::make_sentence(BasicLocalSentence s) {
    GaifmanNode n;
    n.kind = Kind::Sentence;
    n.sentence = std::move(s);
    n.radius = n.sentence.radius;
    return n;
}

GaifmanNode GaifmanNode::make_unary(std::string variable, Formula f, int radius) {
    if (variable != "x" && variable != "y") throw InputError("local leaf variable must be x or y");
    for (const auto& v : f.free_variables())
        if (v != variable) throw InputError("local leaf formula uses '" + v + "' but declares '" + variable + "'");
    GaifmanNode n;
    n.kind = Kind::UnaryLocal;
    n.variable = std::move(variable);
    n.formula = std::move(f);
    n.radius = radius;
    return n;
}

GaifmanNode GaifmanNode::make_product(std::vector<std::pair<Formula, Formula>> pairs) {
    for (const auto& [zx, zy] : pairs) {
        for (const auto& v : zx.free_variables())
            if (v != "x") throw InputError("product: first formula may only use x, found '" + v + "'");
        for (const auto& v : zy.free_variables())
            if (v != "y") throw InputError("product: second formula may only use y, found '" + v + "'");
    }
    GaifmanNode n;
    n.kind = Kind::Product;
    n.products = std::move(pairs);
    return n;
}

GaifmanNode GaifmanNode::make_near(Formula f, int radius) {
    for (const auto& v : f.free_variables())
        if (v != "x" && v != "y") throw InputError("near leaf may only use x and y, found '" + v + "'");
    GaifmanNode n;
    n.kind = Kind::Near;
    n.formula = std::move(f);
    n.radius = radius;
    return n;
}

GaifmanNode GaifmanNode::make_and(std::vector<GaifmanNode> children) {
    if (children.empty()) throw InputError("'and' needs at least one operand");
    GaifmanNode n;
    n.kind = Kind::And;
    n.children = std::move(children);
    return n;
}

GaifmanNode GaifmanNode::make_or(std::vector<GaifmanNode> children) {
    if (children.empty()) throw InputError("'or' needs at least one operand");
    GaifmanNode n;
    n.kind = Kind::Or;
    n.children = std::move(children);
    return n;
}

GaifmanNode GaifmanNode::make_not(GaifmanNode child) {
    GaifmanNode n;
    n.kind = Kind::Not;
    n.children.push_back(std::move(child));
    return n;
}

namespace {

Formula node_formula(const GaifmanNode& n) {
    using K = GaifmanNode::Kind;
    switch (n.kind) {
    case K::Sentence: return n.sentence.to_formula();
    case K::UnaryLocal:
    case K::Near: return n.formula;
    case K::Product: {
        std::vector<Formula> terms;
        for (const auto& [zx, zy] : n.products) terms.push_back(Formula::conjunction(zx, zy));
        return Formula::disjunction(terms);
    }
    case K::Not: return Formula::negation(node_formula(n.children[0]));
    case K::And:
    case K::Or: {
        std::vector<Formula> parts;
        for (const auto& c : n.children) parts.push_back(node_formula(c));
        return n.kind == K::And ? Formula::conjunction(parts) : Formula::disjunction(parts);
    }
    }
    return Formula::falsity();
}

void collect_sentences(const GaifmanNode& n, std::vector<BasicLocalSentence>& out) {
    if (n.kind == GaifmanNode::Kind::Sentence) {
        if (std::find(out.begin(), out.end(), n.sentence) == out.end()) out.push_back(n.sentence);
        return;
    }
    for (const auto& c : n.children) collect_sentences(c, out);
}

GaifmanNode swap_node(const GaifmanNode& n) {
    using K = GaifmanNode::Kind;
    GaifmanNode out = n;
    switch (n.kind) {
    case K::Sentence: break;
    case K::UnaryLocal:
        out.variable = n.variable == "x" ? "y" : "x";
        out.formula = rename_free(n.formula, n.variable, out.variable);
        break;
    case K::Near: out.formula = swap_free(n.formula, "x", "y"); break;
    case K::Product:
        out.products.clear();
        for (const auto& [zx, zy] : n.products) out.products.emplace_back(rename_free(zy, "y", "x"), rename_free(zx, "x", "y"));
        break;
    default:
        for (auto& c : out.children) c = swap_node(c);
        break;
    }
    return out;
}

int max_radius(const GaifmanNode& n) {
    using K = GaifmanNode::Kind;
    int r = (n.kind == K::UnaryLocal || n.kind == K::Near) ? n.radius : 0;
    for (const auto& c : n.children) r = std::max(r, max_radius(c));
    return r;
}

}  // namespace

Formula GaifmanForm::to_formula() const { return node_formula(root); }

std::vector<BasicLocalSentence> GaifmanForm::sentences() const {
    std::vector<BasicLocalSentence> out;
    collect_sentences(root, out);
    return out;
}

GaifmanForm GaifmanForm::swapped() const { return GaifmanForm{swap_node(root), radius}; }

int GaifmanForm::max_leaf_radius() const { return max_radius(root); }

// ---------------------------------------------------------------------------------------------
// S-expressions

namespace {

struct Token {
    enum class Kind { Open, Close, String, Word, End } kind;
    std::string text;
    int line = 1;
};

class SexprLexer {
public:
    explicit SexprLexer(const std::string& text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') ++line_;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= text_.size()) return {Token::Kind::End, "", line_};
        const char c = text_[pos_];
        if (c == '(' || c == ')') {
            ++pos_;
            return {c == '(' ? Token::Kind::Open : Token::Kind::Close, std::string(1, c), line_};
        }
        if (c == '"') {
            const std::size_t close = text_.find('"', pos_ + 1);
            if (close == std::string::npos) throw InputError("gaifman form line " + std::to_string(line_) + ": unterminated string");
            Token t{Token::Kind::String, text_.substr(pos_ + 1, close - pos_ - 1), line_};
            for (std::size_t i = pos_; i < close; ++i)
                if (text_[i] == '\n') ++line_;
            pos_ = close + 1;
            return t;
        }
        std::size_t end = pos_;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) && text_[end] != '(' &&
               text_[end] != ')' && text_[end] != '"')
            ++end;
        Token t{Token::Kind::Word, text_.substr(pos_, end - pos_), line_};
        pos_ = end;
        return t;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

class SexprParser {
public:
    explicit SexprParser(const std::string& text) : lexer_(text) { advance(); }

    GaifmanNode parse_all() {
        GaifmanNode n = node();
        if (current_.kind != Token::Kind::End) fail("trailing input after the form");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw InputError("gaifman form line " + std::to_string(current_.line) + ": " + message);
    }

    void advance() { current_ = lexer_.next(); }

    void expect(Token::Kind kind, const char* what) {
        if (current_.kind != kind) fail(std::string("expected ") + what);
        advance();
    }

    std::string string_literal() {
        if (current_.kind != Token::Kind::String) fail("expected a quoted formula");
        std::string s = current_.text;
        advance();
        return s;
    }

    int natural() {
        if (current_.kind != Token::Kind::Word) fail("expected a natural number");
        const std::string w = current_.text;
        if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
            w.size() > 6)
            fail("expected a natural number, got '" + w + "'");
        advance();
        return std::stoi(w);
    }

    Formula formula(const std::optional<std::vector<std::string>>& vars) {
        const int line = current_.line;
        const std::string text = string_literal();
        try {
            return parse_formula(text, vars);
        } catch (const InputError& e) {
            throw InputError("gaifman form line " + std::to_string(line) + ": " + e.what());
        }
    }

    GaifmanNode node() {
        expect(Token::Kind::Open, "'('");
        if (current_.kind != Token::Kind::Word) fail("expected a node name");
        const std::string head = current_.text;
        advance();
        GaifmanNode out;
        try {
            if (head == "sentence") {
                BasicLocalSentence s;
                s.count = natural();
                s.radius = natural();
                s.chi = formula(std::nullopt);
                if (s.count < 1) fail("sentence needs k >= 1");
                if (s.chi.free_variables().size() > 1) fail("sentence chi must have one free variable");
                out = GaifmanNode::make_sentence(s);
            } else if (head == "local") {
                if (current_.kind != Token::Kind::Word) fail("expected x or y");
                std::string var = current_.text;
                advance();
                const int t = natural();
                out = GaifmanNode::make_unary(var, formula(std::vector<std::string>{var}), t);
            } else if (head == "near") {
                const int t = natural();
                out = GaifmanNode::make_near(formula(std::vector<std::string>{"x", "y"}), t);
            } else if (head == "product") {
                std::vector<std::pair<Formula, Formula>> pairs;
                while (current_.kind == Token::Kind::Open) {
                    advance();
                    Formula zx = formula(std::vector<std::string>{"x"});
                    Formula zy = formula(std::vector<std::string>{"y"});
                    expect(Token::Kind::Close, "')' after a product pair");
                    pairs.emplace_back(std::move(zx), std::move(zy));
                }
                if (pairs.empty()) fail("product needs at least one pair");
                out = GaifmanNode::make_product(std::move(pairs));
            } else if (head == "and" || head == "or" || head == "not") {
                std::vector<GaifmanNode> children;
                while (current_.kind == Token::Kind::Open) children.push_back(node());
                if (head == "not") {
                    if (children.size() != 1) fail("'not' takes exactly one operand");
                    out = GaifmanNode::make_not(std::move(children[0]));
                } else {
                    if (children.empty()) fail("'" + head + "' needs at least one operand");
                    out = head == "and" ? GaifmanNode::make_and(std::move(children)) : GaifmanNode::make_or(std::move(children));
                }
            } else {
                fail("unknown node '" + head + "'");
            }
        } catch (const InputError& e) {
            const std::string what = e.what();
            if (what.rfind("gaifman form", 0) == 0) throw;
            fail(what);
        }
        expect(Token::Kind::Close, "')'");
        return out;
    }

    SexprLexer lexer_;
    Token current_{Token::Kind::End, "", 1};
};

std::string quote(const Formula& f) { return "\"" + f.to_string() + "\""; }

}  // namespace

GaifmanNode parse_gaifman_node(const std::string& text) { return SexprParser(text).parse_all(); }

std::string format_gaifman_node(const GaifmanNode& n) {
    using K = GaifmanNode::Kind;
    switch (n.kind) {
    case K::Sentence:
        return "(sentence " + std::to_string(n.sentence.count) + " " + std::to_string(n.sentence.radius) + " " +
               quote(n.sentence.chi) + ")";
    case K::UnaryLocal: return "(local " + n.variable + " " + std::to_string(n.radius) + " " + quote(n.formula) + ")";
    case K::Near: return "(near " + std::to_string(n.radius) + " " + quote(n.formula) + ")";
    case K::Product: {
        std::string s = "(product";
        for (const auto& [zx, zy] : n.products) s += " (" + quote(zx) + " " + quote(zy) + ")";
        return s + ")";
    }
    case K::And:
    case K::Or:
    case K::Not: {
        std::string s = n.kind == K::And ? "(and" : n.kind == K::Or ? "(or" : "(not";
        for (const auto& c : n.children) s += " " + format_gaifman_node(c);
        return s + ")";
    }
    }
    return "";
}

Transduction GaifmanTransduction::plain() const {
    Transduction t;
    if (copies > 0) t.steps.emplace_back(CopyStep{copies});
    if (!signature.empty()) t.steps.emplace_back(ExpandStep{signature});
    t.steps.emplace_back(InterpretStep{Interpretation(domain, eta.to_formula())});
    return t;
}

GaifmanTransduction read_gaifman_transduction(std::istream& in) {
    GaifmanTransduction t;
    std::optional<int> radius;
    std::string line;
    int number = 0;
    std::string rest;
    bool have_eta = false;
    while (std::getline(in, line)) {
        ++number;
        if (have_eta) {
            rest += line + "\n";
            continue;
        }
        std::istringstream words(line);
        std::string head;
        if (!(words >> head) || head[0] == '#') continue;
        const std::string where = "line " + std::to_string(number) + ": ";
        if (head == "copy") {
            int k = 0;
            if (!(words >> k) || k < 1) throw InputError(where + "usage: copy <k>");
            if (t.copies) throw InputError(where + "duplicate copy line");
            t.copies = k;
        } else if (head == "expand") {
            std::string name;
            while (words >> name) t.signature.push_back(name);
        } else if (head == "nu") {
            const auto open = line.find('"'), close = line.rfind('"');
            if (open == std::string::npos || close == open) throw InputError(where + "usage: nu \"<formula>\"");
            try {
                t.domain = parse_formula(line.substr(open + 1, close - open - 1));
            } catch (const InputError& e) {
                throw InputError(where + e.what());
            }
            if (t.domain.free_variables().size() > 1) throw InputError(where + "nu must have one free variable");
        } else if (head == "radius") {
            int r = -1;
            if (!(words >> r) || r < 0) throw InputError(where + "usage: radius <t>");
            radius = r;
        } else if (head == "eta") {
            have_eta = true;
            std::string remainder;
            std::getline(words, remainder);
            rest = remainder + "\n";
        } else {
            throw InputError(where + "unknown directive '" + head + "'");
        }
    }
    if (!have_eta) throw InputError("missing eta directive");
    t.eta.root = parse_gaifman_node(rest);
    t.eta.radius = radius ? *radius : t.eta.max_leaf_radius();
    return t;
}

GaifmanTransduction parse_gaifman_transduction(const std::string& text) {
    std::istringstream in(text);
    return read_gaifman_transduction(in);
}

std::string format_gaifman_transduction(const GaifmanTransduction& t) {
    std::ostringstream out;
    if (t.copies) out << "copy " << t.copies << '\n';
    if (!t.signature.empty()) {
        out << "expand";
        for (const auto& n : t.signature) out << ' ' << n;
        out << '\n';
    }
    out << "nu " << quote(t.domain) << '\n';
    out << "radius " << t.eta.radius << '\n';
    out << "eta " << format_gaifman_node(t.eta.root) << '\n';
    return out.str();
}

}  // namespace fotrans
