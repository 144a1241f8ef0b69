#include "fotrans/parser.hpp"

#include <cctype>
#include <limits>

#include "fotrans/errors.hpp"

namespace fotrans {

namespace {

enum class Tok { Ident, Int, LParen, RParen, Comma, Dot, Bang, Amp, Bar, Arrow, DoubleArrow, Leq, Eq, End };

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DoubleArrow: return "'<->'";
    case Tok::Leq: return "'<='";
    case Tok::Eq: return "'='";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok type = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) return t;
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                t.text += advance();
            t.type = Tok::Ident;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) t.text += advance();
            t.type = Tok::Int;
            return t;
        }
        auto starts = [&](std::string_view s) { return text_.substr(pos_, s.size()) == s; };
        auto take = [&](Tok type, std::size_t len) {
            for (std::size_t i = 0; i < len; ++i) t.text += advance();
            t.type = type;
            return t;
        };
        if (starts("<->")) return take(Tok::DoubleArrow, 3);
        if (starts("->")) return take(Tok::Arrow, 2);
        if (starts("<=")) return take(Tok::Leq, 2);
        switch (c) {
        case '(': return take(Tok::LParen, 1);
        case ')': return take(Tok::RParen, 1);
        case ',': return take(Tok::Comma, 1);
        case '.': return take(Tok::Dot, 1);
        case '!': return take(Tok::Bang, 1);
        case '&': return take(Tok::Amp, 1);
        case '|': return take(Tok::Bar, 1);
        case '=': return take(Tok::Eq, 1);
        default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }

private:
    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) {
        current_ = lexer_.next();
        lookahead_ = lexer_.next();
    }

    Formula parse() {
        Formula f = parse_iff();
        if (current_.type != Tok::End) error("unexpected " + std::string(describe(current_.type)));
        return f;
    }

private:
    // iff := imp ('<->' imp)*
    Formula parse_iff() {
        Formula f = parse_implies();
        while (current_.type == Tok::DoubleArrow) {
            shift();
            f = Formula::equivalence(f, parse_implies());
        }
        return f;
    }

    // imp := or ('->' imp)?
    Formula parse_implies() {
        Formula f = parse_or();
        if (current_.type == Tok::Arrow) {
            shift();
            return Formula::implication(f, parse_implies());
        }
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (current_.type == Tok::Bar) {
            shift();
            f = Formula::disjunction(f, parse_and());
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (current_.type == Tok::Amp) {
            shift();
            f = Formula::conjunction(f, parse_unary());
        }
        return f;
    }

    Formula parse_unary() {
        if (current_.type == Tok::Bang) {
            shift();
            return Formula::negation(parse_unary());
        }
        return parse_primary();
    }

    Formula parse_primary() {
        if (current_.type == Tok::LParen) {
            shift();
            Formula f = parse_iff();
            expect(Tok::RParen);
            return f;
        }
        if (current_.type != Tok::Ident) error("expected a formula, found " + std::string(describe(current_.type)));

        const std::string word = current_.text;
        if (word == "true" || word == "false") {
            shift();
            return word == "true" ? Formula::truth() : Formula::falsity();
        }
        if ((word == "ex" || word == "all") && lookahead_.type == Tok::Ident) {
            shift();
            std::string var = expect(Tok::Ident).text;
            expect(Tok::Dot);
            Formula body = parse_iff();
            return word == "ex" ? Formula::exists(var, body) : Formula::forall(var, body);
        }
        if (lookahead_.type == Tok::LParen) {
            shift();
            shift();
            std::string x = expect(Tok::Ident).text;
            if (word == "E" || word == "dist") {
                expect(Tok::Comma);
                std::string y = expect(Tok::Ident).text;
                expect(Tok::RParen);
                if (word == "E") return Formula::edge(x, y);
                expect(Tok::Leq);
                Token bound = expect(Tok::Int);
                if (bound.text.size() > 9) throw ParseError("distance bound too large", bound.line, bound.column);
                return Formula::dist_leq(x, y, std::stoi(bound.text));
            }
            expect(Tok::RParen);
            return Formula::predicate(word, x);
        }
        if (lookahead_.type == Tok::Eq) {
            shift();
            shift();
            std::string y = expect(Tok::Ident).text;
            return Formula::equals(word, y);
        }
        error("expected an atom after '" + word + "'");
    }

    void shift() {
        current_ = lookahead_;
        if (current_.type != Tok::End) lookahead_ = lexer_.next();
        else lookahead_ = current_;
    }

    Token expect(Tok type) {
        if (current_.type != type)
            error(std::string("expected ") + describe(type) + ", found " + describe(current_.type));
        Token t = current_;
        shift();
        return t;
    }

    [[noreturn]] void error(const std::string& message) const {
        throw ParseError(message, current_.line, current_.column);
    }

    Lexer lexer_;
    Token current_;
    Token lookahead_;
};

}  // namespace

Formula parse_formula(std::string_view text, const std::optional<std::vector<std::string>>& free_variables) {
    Formula f = Parser(text).parse();
    if (free_variables) {
        for (const std::string& v : f.free_variables()) {
            bool allowed = false;
            for (const std::string& a : *free_variables) allowed = allowed || a == v;
            if (!allowed) throw UnboundVariableError(v);
        }
    }
    return f;
}

}  // namespace fotrans
