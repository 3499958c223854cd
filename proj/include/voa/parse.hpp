#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "voa/calculus.hpp"
#include "voa/presentation.hpp"

namespace voa {

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    int line = 0;
    int col = 0;
    std::string message;
    bool source_discrepancy = false;  // set on corrected-transcription warnings

    std::string to_string() const {
        std::string s = severity == Severity::Error ? "error" : "warning";
        return s + " at " + std::to_string(line) + ":" + std::to_string(col) + ": " + message;
    }
};

inline bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.severity == Diagnostic::Severity::Error) return true;
    return false;
}

// Parsed but not yet canonicalized: bracket coefficients are raw trees
// keyed by pole degree.
struct ParsedFile {
    std::string algebra;
    std::string param = "k";
    std::optional<Rat> critical;
    std::optional<RatFunc> central;
    std::vector<GeneratorDecl> generators;
    // (left, right, pole degree -> raw coefficient)
    std::vector<std::tuple<int, int, std::map<Rat, RawExpr>>> opes;
};

struct ParseResult {
    std::optional<ParsedFile> file;
    std::vector<Diagnostic> diagnostics;
};

namespace detail {

struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1, col = 1;
    size_t offset = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                col_ = 1;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
                ++col_;
            } else {
                break;
            }
        }
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        tok_.offset = pos_;
        if (pos_ >= src_.size()) return;
        char c = src_[pos_];
        if (isalpha(static_cast<unsigned char>(c))) {
            tok_.kind = Token::Kind::Ident;
            size_t s = pos_;
            while (pos_ < src_.size() &&
                   (isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                take();
            tok_.text = std::string(src_.substr(s, pos_ - s));
        } else if (isdigit(static_cast<unsigned char>(c))) {
            tok_.kind = Token::Kind::Number;
            size_t s = pos_;
            while (pos_ < src_.size() && isdigit(static_cast<unsigned char>(src_[pos_]))) take();
            tok_.text = std::string(src_.substr(s, pos_ - s));
        } else {
            tok_.kind = Token::Kind::Punct;
            tok_.text = std::string(1, c);
            take();
        }
    }

    void take() {
        ++pos_;
        ++col_;
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

struct ParseError {
    int line, col;
    std::string message;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lx_(src) {}

    ParsedFile parse_file() {
        ParsedFile f;
        expect_keyword("algebra");
        f.algebra = expect_ident().text;
        while (lx_.peek().kind != Token::Kind::End) {
            Token t = expect_ident();
            if (t.text == "param") {
                f.param = expect_ident().text;
            } else if (t.text == "critical") {
                f.critical = parse_signed_rat();
            } else if (t.text == "central_charge") {
                f.central = parse_ratexpr(f.param);
            } else if (t.text == "generator") {
                GeneratorDecl g;
                g.name = parse_decl_name();
                expect_keyword("weight");
                g.weight = parse_signed_rat();
                if (lx_.peek().kind == Token::Kind::Ident && lx_.peek().text == "conformal") {
                    lx_.next();
                    g.conformal = true;
                }
                for (const auto& prev : f.generators)
                    if (prev.name == g.name)
                        fail(t, "duplicate generator '" + g.name + "'");
                if (g.name == f.param) fail(t, "generator name collides with the level parameter");
                f.generators.push_back(std::move(g));
            } else if (t.text == "ope") {
                int a = parse_gen_ref(f);
                int b = parse_gen_ref(f);
                if (f.generators[a].conformal || f.generators[b].conformal)
                    fail(t, "brackets involving the conformal generator are synthesized; "
                            "remove this entry");
                expect_punct("{");
                std::map<Rat, RawExpr> poles;
                while (!(lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "}")) {
                    Token pt = expect_ident();
                    if (pt.text != "pole") fail(pt, "expected 'pole' or '}'");
                    Rat deg = parse_unsigned_rat();
                    if (deg <= 0) fail(pt, "pole degree must be positive");
                    expect_punct(":");
                    RawExpr e = parse_fieldexpr(f);
                    expect_punct(";");
                    if (!poles.emplace(deg, std::move(e)).second)
                        fail(pt, "duplicate pole degree in this entry");
                }
                expect_punct("}");
                f.opes.emplace_back(a, b, std::move(poles));
            } else {
                fail(t, "unexpected '" + t.text + "'");
            }
        }
        return f;
    }

  private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError{t.line, t.col, msg};
    }

    Token expect_ident() {
        Token t = lx_.next();
        if (t.kind != Token::Kind::Ident) fail(t, "expected identifier, got '" + t.text + "'");
        return t;
    }
    void expect_keyword(const std::string& kw) {
        Token t = lx_.next();
        if (t.kind != Token::Kind::Ident || t.text != kw)
            fail(t, "expected '" + kw + "', got '" + t.text + "'");
    }
    void expect_punct(const std::string& p) {
        Token t = lx_.next();
        if (t.kind != Token::Kind::Punct || t.text != p)
            fail(t, "expected '" + p + "', got '" + t.text + "'");
    }

    // Identifier with an optional immediately adjacent trailing + or -
    // (generator names like G+). Used where a name is expected.
    std::string parse_decl_name() {
        Token t = expect_ident();
        std::string name = t.text;
        const Token& nx = lx_.peek();
        if (nx.kind == Token::Kind::Punct && (nx.text == "+" || nx.text == "-") &&
            nx.offset == t.offset + t.text.size()) {
            name += lx_.next().text;
        }
        return name;
    }

    int parse_gen_ref(const ParsedFile& f) {
        Token t = expect_ident();
        std::string name = t.text;
        const Token& nx = lx_.peek();
        if (nx.kind == Token::Kind::Punct && (nx.text == "+" || nx.text == "-") &&
            nx.offset == t.offset + t.text.size()) {
            name += lx_.next().text;
        }
        for (size_t i = 0; i < f.generators.size(); ++i)
            if (f.generators[i].name == name) return static_cast<int>(i);
        fail(t, "unknown generator '" + name + "'");
    }

    Rat parse_signed_rat() {
        bool neg = false;
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "-") {
            lx_.next();
            neg = true;
        }
        Rat r = parse_unsigned_rat();
        return neg ? -r : r;
    }

    Rat parse_unsigned_rat() {
        Token t = lx_.next();
        if (t.kind != Token::Kind::Number) fail(t, "expected number, got '" + t.text + "'");
        Rat num = rat_from_string(t.text);
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "/") {
            lx_.next();
            Token d = lx_.next();
            if (d.kind != Token::Kind::Number) fail(d, "expected denominator");
            Rat den = rat_from_string(d.text);
            if (den == 0) fail(d, "zero denominator");
            num /= den;
        }
        return num;
    }

    // --- scalar rational expressions in the level parameter ---

    RatFunc parse_ratexpr(const std::string& param) {
        RatFunc acc = parse_ratterm(param);
        while (lx_.peek().kind == Token::Kind::Punct &&
               (lx_.peek().text == "+" || lx_.peek().text == "-")) {
            bool minus = lx_.next().text == "-";
            RatFunc t = parse_ratterm(param);
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    RatFunc parse_ratterm(const std::string& param) {
        bool neg = false;
        while (lx_.peek().kind == Token::Kind::Punct &&
               (lx_.peek().text == "-" || lx_.peek().text == "+")) {
            if (lx_.next().text == "-") neg = !neg;
        }
        RatFunc acc = parse_ratfactor(param);
        while (lx_.peek().kind == Token::Kind::Punct &&
               (lx_.peek().text == "*" || lx_.peek().text == "/")) {
            bool div = lx_.next().text == "/";
            RatFunc f = parse_ratfactor(param);
            if (div) {
                if (f.is_zero()) fail(lx_.peek(), "division by zero");
                acc = acc / f;
            } else {
                acc = acc * f;
            }
        }
        return neg ? -acc : acc;
    }

    RatFunc parse_ratfactor(const std::string& param) {
        Token t = lx_.next();
        RatFunc base;
        if (t.kind == Token::Kind::Number) {
            base = RatFunc(rat_from_string(t.text));
        } else if (t.kind == Token::Kind::Ident && t.text == param) {
            base = RatFunc::var();
        } else if (t.kind == Token::Kind::Punct && t.text == "(") {
            base = parse_ratexpr(param);
            expect_punct(")");
        } else {
            fail(t, "expected number, '" + param + "' or '(' in coefficient");
        }
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "^") {
            lx_.next();
            Token e = lx_.next();
            if (e.kind != Token::Kind::Number) fail(e, "expected exponent");
            base = pow(base, std::stol(e.text));
        }
        return base;
    }

    // --- field expressions ---

    RawExpr parse_fieldexpr(const ParsedFile& f) {
        RawExpr sum = RawExpr::scaled(RatFunc::zero(), RawExpr::vacuum());
        bool neg = false;
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "-") {
            lx_.next();
            neg = true;
        }
        while (true) {
            auto [coef, atom] = parse_term(f);
            if (neg) coef = -coef;
            sum += RawExpr::scaled(coef, std::move(atom));
            const Token& nx = lx_.peek();
            if (nx.kind == Token::Kind::Punct && (nx.text == "+" || nx.text == "-")) {
                neg = nx.text == "-";
                lx_.next();
            } else {
                break;
            }
        }
        return sum;
    }

    // One product term: scalar factors and at most one field atom,
    // separated by '*' (or '/' before a scalar).
    std::pair<RatFunc, RawExpr> parse_term(const ParsedFile& f) {
        RatFunc coef = RatFunc::one();
        std::optional<RawExpr> atom;
        auto one_factor = [&]() {
            const Token& t = lx_.peek();
            if (t.kind == Token::Kind::Number ||
                (t.kind == Token::Kind::Punct && t.text == "(") ||
                (t.kind == Token::Kind::Ident && t.text == f.param)) {
                coef = coef * parse_ratfactor(f.param);
            } else if (t.kind == Token::Kind::Ident) {
                if (atom) fail(t, "more than one field factor in a term");
                atom = parse_field_atom(f);
            } else {
                fail(t, "expected a coefficient or field atom, got '" + t.text + "'");
            }
        };
        one_factor();
        while (lx_.peek().kind == Token::Kind::Punct &&
               (lx_.peek().text == "*" || lx_.peek().text == "/")) {
            Token op = lx_.next();
            if (op.text == "/") {
                RatFunc d = parse_ratfactor(f.param);
                if (d.is_zero()) fail(op, "division by zero");
                coef = coef / d;
            } else {
                one_factor();
            }
        }
        if (!atom) return {coef, RawExpr::vacuum()};
        return {coef, std::move(*atom)};
    }

    RawExpr parse_field_atom(const ParsedFile& f) {
        Token t = expect_ident();
        if (t.text == "NO") {
            expect_punct("(");
            RawExpr l = parse_fieldexpr(f);
            expect_punct(",");
            RawExpr r = parse_fieldexpr(f);
            expect_punct(")");
            return RawExpr::no(std::move(l), std::move(r));
        }
        // derivative atom dN(NAME)
        if (t.text.size() >= 2 && t.text[0] == 'd' &&
            t.text.find_first_not_of("0123456789", 1) == std::string::npos &&
            lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "(") {
            int order = std::stoi(t.text.substr(1));
            expect_punct("(");
            Token n = expect_ident();
            std::string name = n.text;
            const Token& nx = lx_.peek();
            if (nx.kind == Token::Kind::Punct && (nx.text == "+" || nx.text == "-") &&
                nx.offset == n.offset + n.text.size())
                name += lx_.next().text;
            expect_punct(")");
            return RawExpr::atom(resolve(f, n, name), order);
        }
        // plain generator, possibly with an adjacent sign
        std::string name = t.text;
        const Token& nx = lx_.peek();
        if (nx.kind == Token::Kind::Punct && (nx.text == "+" || nx.text == "-") &&
            nx.offset == t.offset + t.text.size()) {
            // Absorb the sign only if that actually names a generator;
            // otherwise it is a binary +/- between terms.
            bool merged_exists = false;
            for (const auto& g : f.generators)
                if (g.name == name + nx.text) merged_exists = true;
            if (merged_exists) name += lx_.next().text;
        }
        return RawExpr::atom(resolve(f, t, name), 0);
    }

    int resolve(const ParsedFile& f, const Token& at, const std::string& name) {
        for (size_t i = 0; i < f.generators.size(); ++i)
            if (f.generators[i].name == name) return static_cast<int>(i);
        fail(at, "unknown name '" + name + "' in ope entry");
    }

    Lexer lx_;
};

}  // namespace detail

inline ParseResult parse_source(std::string_view text) {
    ParseResult r;
    try {
        detail::Parser p(text);
        r.file = p.parse_file();
    } catch (const detail::ParseError& e) {
        r.diagnostics.push_back({Diagnostic::Severity::Error, e.line, e.col, e.message, false});
    }
    return r;
}

struct BuildResult {
    std::optional<AlgebraPresentation> presentation;
    std::vector<Diagnostic> diagnostics;
};

// Canonicalizes the raw bracket coefficients into the PBW basis, processing
// entries by total weight so every rewriting step only consults brackets of
// strictly lighter pairs.
inline BuildResult build_presentation(const ParsedFile& f) {
    BuildResult out;
    auto err = [&](const std::string& m) {
        out.diagnostics.push_back({Diagnostic::Severity::Error, 0, 0, m, false});
    };
    if (!f.critical) err("missing 'critical' statement");
    if (!f.central) err("missing 'central_charge' statement");
    if (f.generators.empty()) err("no generators declared");
    if (has_errors(out.diagnostics)) return out;

    AlgebraPresentation p;
    p.name = f.algebra;
    p.generators = f.generators;
    p.declared_c = *f.central;
    p.critical_level = *f.critical;

    std::vector<size_t> order(f.opes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto pair_weight = [&](size_t i) {
        const auto& [a, b, poles] = f.opes[i];
        return p.generators[a].weight + p.generators[b].weight;
    };
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        if (pair_weight(x) != pair_weight(y)) return pair_weight(x) < pair_weight(y);
        return x < y;
    });

    Calculus calc(p);
    for (size_t i : order) {
        const auto& [a, b, poles] = f.opes[i];
        if (p.table.has(a, b)) {
            err("duplicate ope entry for (" + p.generators[a].name + ", " + p.generators[b].name + ")");
            return out;
        }
        LambdaPoly entry;
        for (const auto& [deg, raw] : poles) {
            long n;
            try {
                n = mode_convert(deg, p.generators[a].weight).product_index;
            } catch (const Error&) {
                err("pole degree " + to_string(deg) + " in (" + p.generators[a].name + ", " +
                    p.generators[b].name + ") has no integral product index");
                return out;
            }
            try {
                entry.set(static_cast<int>(n), calc.canonicalize(raw));
            } catch (const Error& e) {
                err(std::string("while canonicalizing (") + p.generators[a].name + ", " +
                    p.generators[b].name + ") pole " + to_string(deg) + ": " + e.what());
                return out;
            }
        }
        p.table.set(a, b, std::move(entry));
    }
    out.presentation = std::move(p);
    return out;
}

}  // namespace voa
